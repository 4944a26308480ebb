#!/usr/bin/env python3
"""Regenerate the world data files shipped in src/geoeval/data/.

The tables below were assembled offline from public country lists, land
border adjacency references, and approximate country centroids. They are
deliberately plain data: disputed borders stay whatever this file says,
and edits belong here, not in engine code.

Usage: python tools/build_world_data.py
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

OUT_DIR = Path(__file__).resolve().parent.parent / "src" / "geoeval" / "data"

# code, display name, aliases, centroid lat, centroid lon, island nation
COUNTRIES: list[tuple[str, str, list[str], float, float, bool]] = [
    # Europe
    ("AD", "Andorra", [], 42.55, 1.58, False),
    ("AL", "Albania", [], 41.15, 20.17, False),
    ("AT", "Austria", [], 47.52, 14.55, False),
    ("BA", "Bosnia and Herzegovina", ["Bosnia"], 43.92, 17.68, False),
    ("BE", "Belgium", [], 50.50, 4.47, False),
    ("BG", "Bulgaria", [], 42.73, 25.49, False),
    ("BY", "Belarus", [], 53.71, 27.95, False),
    ("CH", "Switzerland", [], 46.82, 8.23, False),
    ("CY", "Cyprus", [], 35.13, 33.43, True),
    ("CZ", "Czech Republic", ["Czechia"], 49.82, 15.47, False),
    ("DE", "Germany", [], 51.17, 10.45, False),
    ("DK", "Denmark", [], 56.26, 9.50, False),
    ("EE", "Estonia", [], 58.60, 25.01, False),
    ("ES", "Spain", [], 40.46, -3.75, False),
    ("FI", "Finland", [], 61.92, 25.75, False),
    ("FR", "France", [], 46.23, 2.21, False),
    ("GB", "United Kingdom", ["UK", "Great Britain", "Britain", "England", "Scotland", "Wales"], 55.38, -3.44, True),
    ("GR", "Greece", [], 39.07, 21.82, False),
    ("HR", "Croatia", [], 45.10, 15.20, False),
    ("HU", "Hungary", [], 47.16, 19.50, False),
    ("IE", "Ireland", [], 53.41, -8.24, True),
    ("IS", "Iceland", [], 64.96, -19.02, True),
    ("IT", "Italy", [], 41.87, 12.57, False),
    ("LI", "Liechtenstein", [], 47.17, 9.56, False),
    ("LT", "Lithuania", [], 55.17, 23.88, False),
    ("LU", "Luxembourg", [], 49.82, 6.13, False),
    ("LV", "Latvia", [], 56.88, 24.60, False),
    ("MC", "Monaco", [], 43.75, 7.41, False),
    ("MD", "Moldova", [], 47.41, 28.37, False),
    ("ME", "Montenegro", [], 42.71, 19.37, False),
    ("MK", "North Macedonia", ["Macedonia"], 41.61, 21.75, False),
    ("MT", "Malta", [], 35.94, 14.38, True),
    ("NL", "Netherlands", ["Holland"], 52.13, 5.29, False),
    ("NO", "Norway", [], 60.47, 8.47, False),
    ("PL", "Poland", [], 51.92, 19.15, False),
    ("PT", "Portugal", [], 39.40, -8.22, False),
    ("RO", "Romania", [], 45.94, 24.97, False),
    ("RS", "Serbia", [], 44.02, 21.01, False),
    ("RU", "Russia", ["Russian Federation"], 61.52, 105.32, False),
    ("SE", "Sweden", [], 60.13, 18.64, False),
    ("SI", "Slovenia", [], 46.15, 14.99, False),
    ("SK", "Slovakia", [], 48.67, 19.70, False),
    ("SM", "San Marino", [], 43.94, 12.46, False),
    ("UA", "Ukraine", [], 48.38, 31.17, False),
    ("VA", "Vatican City", ["Holy See"], 41.90, 12.45, False),
    ("XK", "Kosovo", [], 42.60, 20.90, False),
    # Asia
    ("AE", "United Arab Emirates", ["UAE"], 23.42, 53.85, False),
    ("AF", "Afghanistan", [], 33.94, 67.71, False),
    ("AM", "Armenia", [], 40.07, 45.04, False),
    ("AZ", "Azerbaijan", [], 40.14, 47.58, False),
    ("BD", "Bangladesh", [], 23.68, 90.36, False),
    ("BH", "Bahrain", [], 26.07, 50.55, True),
    ("BN", "Brunei", ["Brunei Darussalam"], 4.54, 114.73, False),
    ("BT", "Bhutan", [], 27.51, 90.43, False),
    ("CN", "China", ["People's Republic of China", "Mainland China"], 35.86, 104.20, False),
    ("GE", "Georgia", [], 42.32, 43.36, False),
    ("HK", "Hong Kong", ["Hong Kong SAR"], 22.32, 114.17, False),
    ("ID", "Indonesia", [], -0.79, 113.92, False),
    ("IL", "Israel", [], 31.05, 34.85, False),
    ("IN", "India", [], 20.59, 78.96, False),
    ("IQ", "Iraq", [], 33.22, 43.68, False),
    ("IR", "Iran", [], 32.43, 53.69, False),
    ("JO", "Jordan", [], 30.59, 36.24, False),
    ("JP", "Japan", [], 36.20, 138.25, True),
    ("KG", "Kyrgyzstan", [], 41.20, 74.77, False),
    ("KH", "Cambodia", [], 12.57, 104.99, False),
    ("KP", "North Korea", ["Korea, North", "DPRK"], 40.34, 127.51, False),
    ("KR", "South Korea", ["Korea, South", "Republic of Korea"], 35.91, 127.77, False),
    ("KW", "Kuwait", [], 29.31, 47.48, False),
    ("KZ", "Kazakhstan", [], 48.02, 66.92, False),
    ("LA", "Laos", ["Lao PDR"], 19.86, 102.50, False),
    ("LB", "Lebanon", [], 33.85, 35.86, False),
    ("LK", "Sri Lanka", [], 7.87, 80.77, True),
    ("MM", "Myanmar", ["Burma"], 21.91, 95.96, False),
    ("MN", "Mongolia", [], 46.86, 103.85, False),
    ("MO", "Macau", ["Macao"], 22.20, 113.54, False),
    ("MV", "Maldives", [], 3.20, 73.22, True),
    ("MY", "Malaysia", [], 4.21, 101.98, False),
    ("NP", "Nepal", [], 28.39, 84.12, False),
    ("OM", "Oman", [], 21.51, 55.92, False),
    ("PH", "Philippines", [], 12.88, 121.77, True),
    ("PK", "Pakistan", [], 30.38, 69.35, False),
    ("PS", "Palestine", ["Palestinian Territories"], 31.95, 35.23, False),
    ("QA", "Qatar", [], 25.35, 51.18, False),
    ("SA", "Saudi Arabia", [], 23.89, 45.08, False),
    ("SG", "Singapore", [], 1.35, 103.82, True),
    ("SY", "Syria", [], 34.80, 38.99, False),
    ("TH", "Thailand", [], 15.87, 100.99, False),
    ("TJ", "Tajikistan", [], 38.86, 71.28, False),
    ("TL", "Timor-Leste", ["East Timor"], -8.87, 125.73, False),
    ("TM", "Turkmenistan", [], 38.97, 59.56, False),
    ("TR", "Turkey", ["Turkiye"], 38.96, 35.24, False),
    ("TW", "Taiwan", [], 23.70, 120.96, True),
    ("UZ", "Uzbekistan", [], 41.38, 64.59, False),
    ("VN", "Vietnam", ["Viet Nam"], 14.06, 108.28, False),
    ("YE", "Yemen", [], 15.55, 48.52, False),
    # Africa
    ("AO", "Angola", [], -11.20, 17.87, False),
    ("BF", "Burkina Faso", [], 12.24, -1.56, False),
    ("BI", "Burundi", [], -3.37, 29.92, False),
    ("BJ", "Benin", [], 9.31, 2.32, False),
    ("BW", "Botswana", [], -22.33, 24.68, False),
    ("CD", "Democratic Republic of the Congo", ["DR Congo", "DRC", "Congo-Kinshasa"], -4.04, 21.76, False),
    ("CF", "Central African Republic", [], 6.61, 20.94, False),
    ("CG", "Republic of the Congo", ["Congo-Brazzaville"], -0.23, 15.83, False),
    ("CI", "Ivory Coast", ["Cote d'Ivoire", "Côte d'Ivoire"], 7.54, -5.55, False),
    ("CM", "Cameroon", [], 7.37, 12.35, False),
    ("CV", "Cape Verde", ["Cabo Verde"], 16.00, -24.01, True),
    ("DJ", "Djibouti", [], 11.83, 42.59, False),
    ("DZ", "Algeria", [], 28.03, 1.66, False),
    ("EG", "Egypt", [], 26.82, 30.80, False),
    ("EH", "Western Sahara", [], 24.22, -12.89, False),
    ("ER", "Eritrea", [], 15.18, 39.78, False),
    ("ET", "Ethiopia", [], 9.15, 40.49, False),
    ("GA", "Gabon", [], -0.80, 11.61, False),
    ("GH", "Ghana", [], 7.95, -1.02, False),
    ("GM", "Gambia", ["The Gambia"], 13.44, -15.31, False),
    ("GN", "Guinea", [], 9.95, -9.70, False),
    ("GQ", "Equatorial Guinea", [], 1.65, 10.27, False),
    ("GW", "Guinea-Bissau", [], 11.80, -15.18, False),
    ("KE", "Kenya", [], -0.02, 37.91, False),
    ("KM", "Comoros", [], -11.88, 43.87, True),
    ("LR", "Liberia", [], 6.43, -9.43, False),
    ("LS", "Lesotho", [], -29.61, 28.23, False),
    ("LY", "Libya", [], 26.34, 17.23, False),
    ("MA", "Morocco", [], 31.79, -7.09, False),
    ("MG", "Madagascar", [], -18.77, 46.87, True),
    ("ML", "Mali", [], 17.57, -4.00, False),
    ("MR", "Mauritania", [], 21.01, -10.94, False),
    ("MU", "Mauritius", [], -20.35, 57.55, True),
    ("MW", "Malawi", [], -13.25, 34.30, False),
    ("MZ", "Mozambique", [], -18.67, 35.53, False),
    ("NA", "Namibia", [], -22.96, 18.49, False),
    ("NE", "Niger", [], 17.61, 8.08, False),
    ("NG", "Nigeria", [], 9.08, 8.68, False),
    ("RE", "Reunion", ["Réunion"], -21.12, 55.54, True),
    ("RW", "Rwanda", [], -1.94, 29.87, False),
    ("SC", "Seychelles", [], -4.68, 55.49, True),
    ("SD", "Sudan", [], 12.86, 30.22, False),
    ("SL", "Sierra Leone", [], 8.46, -11.78, False),
    ("SN", "Senegal", [], 14.50, -14.45, False),
    ("SO", "Somalia", [], 5.15, 46.20, False),
    ("SS", "South Sudan", [], 6.88, 31.31, False),
    ("ST", "Sao Tome and Principe", ["São Tomé and Príncipe"], 0.19, 6.61, True),
    ("SZ", "Eswatini", ["Swaziland"], -26.52, 31.47, False),
    ("TD", "Chad", [], 15.45, 18.73, False),
    ("TG", "Togo", [], 8.62, 0.82, False),
    ("TN", "Tunisia", [], 33.89, 9.54, False),
    ("TZ", "Tanzania", [], -6.37, 34.89, False),
    ("UG", "Uganda", [], 1.37, 32.29, False),
    ("ZA", "South Africa", [], -30.56, 22.94, False),
    ("ZM", "Zambia", [], -13.13, 27.85, False),
    ("ZW", "Zimbabwe", [], -19.02, 29.15, False),
    # Americas
    ("AG", "Antigua and Barbuda", [], 17.06, -61.80, True),
    ("AR", "Argentina", [], -38.42, -63.62, False),
    ("BB", "Barbados", [], 13.19, -59.54, True),
    ("BO", "Bolivia", [], -16.29, -63.59, False),
    ("BR", "Brazil", [], -14.24, -51.93, False),
    ("BS", "Bahamas", ["The Bahamas"], 25.03, -77.40, True),
    ("BZ", "Belize", [], 17.19, -88.50, False),
    ("CA", "Canada", [], 56.13, -106.35, False),
    ("CL", "Chile", [], -35.68, -71.54, False),
    ("CO", "Colombia", [], 4.57, -74.30, False),
    ("CR", "Costa Rica", [], 9.75, -83.75, False),
    ("CU", "Cuba", [], 21.52, -77.78, True),
    ("DM", "Dominica", [], 15.41, -61.37, True),
    ("DO", "Dominican Republic", [], 18.74, -70.16, False),
    ("EC", "Ecuador", [], -1.83, -78.18, False),
    ("GD", "Grenada", [], 12.12, -61.68, True),
    ("GF", "French Guiana", [], 3.93, -53.13, False),
    ("GL", "Greenland", [], 71.71, -42.60, True),
    ("GT", "Guatemala", [], 15.78, -90.23, False),
    ("GY", "Guyana", [], 4.86, -58.93, False),
    ("HN", "Honduras", [], 15.20, -86.24, False),
    ("HT", "Haiti", [], 18.97, -72.29, False),
    ("JM", "Jamaica", [], 18.11, -77.30, True),
    ("KN", "Saint Kitts and Nevis", [], 17.36, -62.78, True),
    ("LC", "Saint Lucia", [], 13.91, -60.98, True),
    ("MX", "Mexico", [], 23.63, -102.55, False),
    ("NI", "Nicaragua", [], 12.87, -85.21, False),
    ("PA", "Panama", [], 8.54, -80.78, False),
    ("PE", "Peru", [], -9.19, -75.02, False),
    ("PR", "Puerto Rico", [], 18.22, -66.59, True),
    ("PY", "Paraguay", [], -23.44, -58.44, False),
    ("SR", "Suriname", [], 3.92, -56.03, False),
    ("SV", "El Salvador", [], 13.79, -88.90, False),
    ("TT", "Trinidad and Tobago", [], 10.69, -61.22, True),
    ("US", "United States", ["USA", "United States of America"], 37.09, -95.71, False),
    ("UY", "Uruguay", [], -32.52, -55.77, False),
    ("VC", "Saint Vincent and the Grenadines", [], 13.25, -61.20, True),
    ("VE", "Venezuela", [], 6.42, -66.59, False),
    # Oceania
    ("AU", "Australia", [], -25.27, 133.78, True),
    ("FJ", "Fiji", [], -17.71, 178.07, True),
    ("FM", "Micronesia", ["Federated States of Micronesia"], 7.43, 150.55, True),
    ("KI", "Kiribati", [], -3.37, -168.73, True),
    ("MH", "Marshall Islands", [], 7.13, 171.18, True),
    ("NR", "Nauru", [], -0.52, 166.93, True),
    ("NZ", "New Zealand", [], -40.90, 174.89, True),
    ("PG", "Papua New Guinea", [], -6.31, 143.96, False),
    ("PW", "Palau", [], 7.51, 134.58, True),
    ("SB", "Solomon Islands", [], -9.65, 160.16, True),
    ("TO", "Tonga", [], -21.18, -175.20, True),
    ("TV", "Tuvalu", [], -7.11, 177.65, True),
    ("VU", "Vanuatu", [], -15.38, 166.96, True),
    ("WS", "Samoa", [], -13.76, -172.10, True),
    # Territories common in street-view datasets
    ("AI", "Anguilla", [], 18.22, -63.07, True),
    ("AS", "American Samoa", [], -14.27, -170.13, True),
    ("AW", "Aruba", [], 12.52, -69.97, True),
    ("AX", "Aland Islands", ["Åland Islands", "Aland"], 60.18, 19.92, True),
    ("BL", "Saint Barthelemy", ["Saint Barthélemy"], 17.90, -62.83, True),
    ("BM", "Bermuda", [], 32.32, -64.76, True),
    ("BQ", "Bonaire", ["Caribbean Netherlands"], 12.18, -68.26, True),
    ("CK", "Cook Islands", [], -21.24, -159.78, True),
    ("CW", "Curacao", ["Curaçao"], 12.17, -68.99, True),
    ("FK", "Falkland Islands", ["Malvinas"], -51.80, -59.52, True),
    ("FO", "Faroe Islands", [], 61.89, -6.91, True),
    ("GG", "Guernsey", [], 49.45, -2.58, True),
    ("GI", "Gibraltar", [], 36.14, -5.35, False),
    ("GP", "Guadeloupe", [], 16.27, -61.55, True),
    ("GU", "Guam", [], 13.44, 144.79, True),
    ("IM", "Isle of Man", [], 54.24, -4.55, True),
    ("JE", "Jersey", [], 49.21, -2.13, True),
    ("KY", "Cayman Islands", [], 19.31, -81.25, True),
    ("MF", "Saint Martin", [], 18.08, -63.05, False),
    ("MP", "Northern Mariana Islands", [], 15.10, 145.67, True),
    ("MQ", "Martinique", [], 14.64, -61.02, True),
    ("MS", "Montserrat", [], 16.74, -62.19, True),
    ("NC", "New Caledonia", [], -20.90, 165.62, True),
    ("NU", "Niue", [], -19.05, -169.87, True),
    ("PF", "French Polynesia", [], -17.68, -149.41, True),
    ("PM", "Saint Pierre and Miquelon", [], 46.89, -56.31, True),
    ("SH", "Saint Helena", [], -15.97, -5.70, True),
    ("SX", "Sint Maarten", [], 18.04, -63.07, False),
    ("TC", "Turks and Caicos Islands", [], 21.69, -71.80, True),
    ("VG", "British Virgin Islands", [], 18.42, -64.64, True),
    ("VI", "U.S. Virgin Islands", ["US Virgin Islands"], 18.34, -64.90, True),
    ("WF", "Wallis and Futuna", [], -13.77, -177.16, True),
    ("YT", "Mayotte", [], -12.83, 45.17, True),
]

# Land borders, one pair per line, codes in either order.
BORDERS: list[tuple[str, str]] = [
    # Europe
    ("AD", "ES"), ("AD", "FR"),
    ("AL", "GR"), ("AL", "ME"), ("AL", "MK"), ("AL", "XK"),
    ("AT", "CH"), ("AT", "CZ"), ("AT", "DE"), ("AT", "HU"), ("AT", "IT"),
    ("AT", "LI"), ("AT", "SI"), ("AT", "SK"),
    ("BA", "HR"), ("BA", "ME"), ("BA", "RS"),
    ("BE", "DE"), ("BE", "FR"), ("BE", "LU"), ("BE", "NL"),
    ("BG", "GR"), ("BG", "MK"), ("BG", "RO"), ("BG", "RS"), ("BG", "TR"),
    ("BY", "LT"), ("BY", "LV"), ("BY", "PL"), ("BY", "RU"), ("BY", "UA"),
    ("CH", "DE"), ("CH", "FR"), ("CH", "IT"), ("CH", "LI"),
    ("CZ", "DE"), ("CZ", "PL"), ("CZ", "SK"),
    ("DE", "DK"), ("DE", "FR"), ("DE", "LU"), ("DE", "NL"), ("DE", "PL"),
    ("EE", "LV"), ("EE", "RU"),
    ("ES", "FR"), ("ES", "MA"), ("ES", "PT"),
    ("FI", "NO"), ("FI", "RU"), ("FI", "SE"),
    ("FR", "IT"), ("FR", "LU"), ("FR", "MC"),
    ("GB", "IE"),
    ("GR", "MK"), ("GR", "TR"),
    ("HR", "HU"), ("HR", "ME"), ("HR", "RS"), ("HR", "SI"),
    ("HU", "RO"), ("HU", "RS"), ("HU", "SI"), ("HU", "SK"), ("HU", "UA"),
    ("IT", "SI"), ("IT", "SM"), ("IT", "VA"),
    ("LT", "LV"), ("LT", "PL"), ("LT", "RU"),
    ("LV", "RU"),
    ("MD", "RO"), ("MD", "UA"),
    ("ME", "RS"), ("ME", "XK"),
    ("MK", "RS"), ("MK", "XK"),
    ("NO", "RU"), ("NO", "SE"),
    ("PL", "RU"), ("PL", "SK"), ("PL", "UA"),
    ("RO", "RS"), ("RO", "UA"),
    ("RS", "XK"),
    ("RU", "UA"),
    ("SK", "UA"),
    # Asia
    ("AE", "OM"), ("AE", "SA"),
    ("AF", "CN"), ("AF", "IR"), ("AF", "PK"), ("AF", "TJ"), ("AF", "TM"), ("AF", "UZ"),
    ("AM", "AZ"), ("AM", "GE"), ("AM", "IR"), ("AM", "TR"),
    ("AZ", "GE"), ("AZ", "IR"), ("AZ", "RU"), ("AZ", "TR"),
    ("BD", "IN"), ("BD", "MM"),
    ("BN", "MY"),
    ("BT", "CN"), ("BT", "IN"),
    ("CN", "IN"), ("CN", "KG"), ("CN", "KP"), ("CN", "KZ"), ("CN", "LA"),
    ("CN", "MM"), ("CN", "MN"), ("CN", "NP"), ("CN", "PK"), ("CN", "RU"),
    ("CN", "TJ"), ("CN", "VN"),
    ("EG", "IL"), ("EG", "PS"),
    ("GE", "RU"), ("GE", "TR"),
    ("ID", "MY"), ("ID", "PG"), ("ID", "TL"),
    ("IL", "JO"), ("IL", "LB"), ("IL", "PS"), ("IL", "SY"),
    ("IN", "MM"), ("IN", "NP"), ("IN", "PK"),
    ("IQ", "IR"), ("IQ", "JO"), ("IQ", "KW"), ("IQ", "SA"), ("IQ", "SY"), ("IQ", "TR"),
    ("IR", "PK"), ("IR", "TM"), ("IR", "TR"),
    ("JO", "PS"), ("JO", "SA"), ("JO", "SY"),
    ("KG", "KZ"), ("KG", "TJ"), ("KG", "UZ"),
    ("KH", "LA"), ("KH", "TH"), ("KH", "VN"),
    ("KP", "KR"), ("KP", "RU"),
    ("KW", "SA"),
    ("KZ", "RU"), ("KZ", "TM"), ("KZ", "UZ"),
    ("LA", "MM"), ("LA", "TH"), ("LA", "VN"),
    ("LB", "SY"),
    ("MM", "TH"),
    ("MN", "RU"),
    ("MY", "TH"),
    ("OM", "SA"), ("OM", "YE"),
    ("QA", "SA"),
    ("SA", "YE"),
    ("SY", "TR"),
    ("TJ", "UZ"),
    ("TM", "UZ"),
    # Africa
    ("AO", "CD"), ("AO", "CG"), ("AO", "NA"), ("AO", "ZM"),
    ("BF", "BJ"), ("BF", "CI"), ("BF", "GH"), ("BF", "ML"), ("BF", "NE"), ("BF", "TG"),
    ("BI", "CD"), ("BI", "RW"), ("BI", "TZ"),
    ("BJ", "NE"), ("BJ", "NG"), ("BJ", "TG"),
    ("BW", "NA"), ("BW", "ZA"), ("BW", "ZM"), ("BW", "ZW"),
    ("CD", "CF"), ("CD", "CG"), ("CD", "RW"), ("CD", "SS"), ("CD", "TZ"),
    ("CD", "UG"), ("CD", "ZM"),
    ("CF", "CG"), ("CF", "CM"), ("CF", "SD"), ("CF", "SS"), ("CF", "TD"),
    ("CG", "CM"), ("CG", "GA"),
    ("CI", "GH"), ("CI", "GN"), ("CI", "LR"), ("CI", "ML"),
    ("CM", "GA"), ("CM", "GQ"), ("CM", "NG"), ("CM", "TD"),
    ("DJ", "ER"), ("DJ", "ET"), ("DJ", "SO"),
    ("DZ", "EH"), ("DZ", "LY"), ("DZ", "MA"), ("DZ", "ML"), ("DZ", "MR"),
    ("DZ", "NE"), ("DZ", "TN"),
    ("EG", "LY"), ("EG", "SD"),
    ("ER", "ET"), ("ER", "SD"),
    ("ET", "KE"), ("ET", "SO"), ("ET", "SS"), ("ET", "SD"),
    ("GA", "GQ"),
    ("GH", "TG"),
    ("GM", "SN"),
    ("GN", "GW"), ("GN", "LR"), ("GN", "ML"), ("GN", "SL"), ("GN", "SN"),
    ("GW", "SN"),
    ("KE", "SO"), ("KE", "SS"), ("KE", "TZ"), ("KE", "UG"),
    ("LR", "SL"),
    ("LS", "ZA"),
    ("LY", "NE"), ("LY", "SD"), ("LY", "TD"), ("LY", "TN"),
    ("MA", "EH"),
    ("ML", "MR"), ("ML", "NE"), ("ML", "SN"),
    ("MR", "EH"), ("MR", "SN"),
    ("MW", "MZ"), ("MW", "TZ"), ("MW", "ZM"),
    ("MZ", "SZ"), ("MZ", "TZ"), ("MZ", "ZA"), ("MZ", "ZM"), ("MZ", "ZW"),
    ("NA", "ZA"), ("NA", "ZM"),
    ("NE", "NG"), ("NE", "TD"),
    ("NG", "TD"),
    ("RW", "TZ"), ("RW", "UG"),
    ("SD", "SS"), ("SD", "TD"),
    ("SS", "UG"),
    ("SZ", "ZA"),
    ("TZ", "UG"), ("TZ", "ZM"),
    ("ZM", "ZW"),
    ("ZA", "ZW"),
    # Americas
    ("AR", "BO"), ("AR", "BR"), ("AR", "CL"), ("AR", "PY"), ("AR", "UY"),
    ("BO", "BR"), ("BO", "CL"), ("BO", "PE"), ("BO", "PY"),
    ("BR", "CO"), ("BR", "GF"), ("BR", "GY"), ("BR", "PE"), ("BR", "PY"),
    ("BR", "SR"), ("BR", "UY"), ("BR", "VE"),
    ("BZ", "GT"), ("BZ", "MX"),
    ("CA", "US"),
    ("CL", "PE"),
    ("CO", "EC"), ("CO", "PA"), ("CO", "PE"), ("CO", "VE"),
    ("CR", "NI"), ("CR", "PA"),
    ("DO", "HT"),
    ("EC", "PE"),
    ("GF", "SR"),
    ("GT", "HN"), ("GT", "MX"), ("GT", "SV"),
    ("GY", "SR"), ("GY", "VE"),
    ("HN", "NI"), ("HN", "SV"),
    ("MX", "US"),
    # Territory land borders
    ("ES", "GI"),
    ("MF", "SX"),
]

# Territory and enclave links that are not land borders. Far-flung
# territories are left to island bridging instead: a political edge like
# French Polynesia-France would put Tahiti one hop from Paris and distort
# every hop histogram that touches it.
SPECIAL_EDGES: list[tuple[str, str]] = [
    ("HK", "CN"),
    ("MO", "CN"),
    ("PR", "US"),
    ("GL", "DK"),
    ("FO", "DK"),
]

PROMPT_BANK = {
    "urban_rural": ["an urban city scene", "a rural countryside scene"],
    "biomes": [
        {"name": "Tropical", "prompt": "a tropical rainforest or jungle scene"},
        {"name": "Arid", "prompt": "a dry desert or arid landscape"},
        {"name": "Temperate", "prompt": "a temperate forest or grassland scene"},
        {"name": "Mediterranean", "prompt": "a Mediterranean coastal or dry summer landscape"},
        {"name": "Tundra", "prompt": "a cold tundra, snow, or polar landscape"},
        {"name": "Boreal", "prompt": "a boreal forest or taiga with conifer trees"},
    ],
}


def main() -> None:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    codes = {c[0] for c in COUNTRIES}
    assert len(codes) == len(COUNTRIES), "duplicate country code"
    for a, b in BORDERS + SPECIAL_EDGES:
        assert a in codes and b in codes, f"edge ({a},{b}) references unknown code"
        assert a != b, f"self-loop ({a},{b})"
    seen_pairs = set()
    for a, b in BORDERS + SPECIAL_EDGES:
        pair = frozenset((a, b))
        assert pair not in seen_pairs, f"duplicate edge ({a},{b})"
        seen_pairs.add(pair)

    with (OUT_DIR / "registry.jsonl").open("w", encoding="utf-8") as fh:
        for code, name, aliases, lat, lon, island in COUNTRIES:
            fh.write(
                json.dumps(
                    {"code": code, "name": name, "aliases": aliases,
                     "lat": lat, "lon": lon, "island": island},
                    ensure_ascii=False,
                )
                + "\n"
            )

    for filename, edges in (("border_edges.csv", BORDERS), ("special_edges.csv", SPECIAL_EDGES)):
        with (OUT_DIR / filename).open("w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["code_a", "code_b"])
            for a, b in sorted(edges):
                writer.writerow([a, b])

    (OUT_DIR / "prompt_bank.json").write_text(
        json.dumps(PROMPT_BANK, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
    )
    print(f"wrote {len(COUNTRIES)} countries, {len(BORDERS)} borders, "
          f"{len(SPECIAL_EDGES)} special edges to {OUT_DIR}")


if __name__ == "__main__":
    main()
