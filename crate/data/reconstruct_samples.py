#!/usr/bin/env python3
"""Regenerate the bundled sample CSVs from the anchor tables below.

The anchors are approximate values for the public series named in
data/README.md. Annual rows between anchors are linear interpolations.
Replace the generated files with the official downloads for any
analysis that matters.
"""
from pathlib import Path

ROOT = Path(__file__).resolve().parent

# Wage and salary accruals share of gross domestic income, percent (annual).
US_FED = {
    1948: 47.4, 1949: 47.3, 1950: 47.2, 1951: 48.6, 1952: 49.6, 1953: 50.4,
    1954: 49.6, 1955: 49.2, 1956: 50.1, 1957: 50.2, 1958: 49.6, 1959: 49.7,
    1960: 50.3, 1961: 49.9, 1962: 49.8, 1963: 49.8, 1964: 49.8, 1965: 49.6,
    1966: 50.5, 1967: 51.1, 1968: 51.4, 1969: 52.2, 1970: 52.3, 1971: 51.2,
    1972: 51.0, 1973: 50.9, 1974: 51.1, 1975: 49.8, 1976: 49.6, 1977: 49.3,
    1978: 49.3, 1979: 49.5, 1980: 49.8, 1981: 49.0, 1982: 49.1, 1983: 48.3,
    1984: 47.8, 1985: 48.0, 1986: 48.1, 1987: 48.3, 1988: 48.0, 1989: 47.5,
    1990: 47.6, 1991: 47.4, 1992: 47.4, 1993: 47.0, 1994: 46.5, 1995: 46.4,
    1996: 46.2, 1997: 46.4, 1998: 47.2, 1999: 47.6, 2000: 48.3, 2001: 48.1,
    2002: 46.9, 2003: 46.1, 2004: 45.4, 2005: 45.0, 2006: 45.0, 2007: 45.5,
    2008: 46.0, 2009: 45.0, 2010: 44.3, 2011: 43.5, 2012: 42.8, 2013: 42.6,
    2014: 42.8, 2015: 43.3, 2016: 43.5, 2017: 43.5, 2018: 43.4, 2019: 43.5,
    2020: 45.0, 2021: 44.0,
}

# Median age in years, five-year anchors.
MEDIAN_AGE = {
    "United States": {1950: 30.0, 1955: 30.4, 1960: 29.6, 1965: 28.4, 1970: 28.1,
                      1975: 28.8, 1980: 30.0, 1985: 31.4, 1990: 32.8, 1995: 34.0,
                      2000: 35.2, 2005: 36.0, 2010: 36.9, 2015: 37.6, 2020: 38.3,
                      2021: 38.5},
    "Japan": {1970: 28.9, 1975: 30.3, 1980: 32.5, 1985: 34.9, 1990: 37.3,
              1995: 39.3, 2000: 41.2, 2005: 43.0, 2010: 44.7, 2015: 46.4},
    "Germany": {1970: 34.2, 1975: 35.0, 1980: 36.4, 1985: 37.2, 1990: 37.6,
                1995: 38.4, 2000: 39.9, 2005: 42.1, 2010: 44.3, 2015: 45.9},
    "United Kingdom": {1970: 33.9, 1975: 33.8, 1980: 34.4, 1985: 35.3, 1990: 35.8,
                       1995: 36.6, 2000: 37.6, 2005: 38.7, 2010: 39.5, 2015: 40.0},
    "France": {1970: 32.5, 1975: 32.0, 1980: 32.4, 1985: 33.6, 1990: 34.8,
               1995: 36.2, 2000: 37.6, 2005: 38.9, 2010: 40.0, 2015: 41.2},
    "Italy": {1970: 32.9, 1975: 33.6, 1980: 34.4, 1985: 35.8, 1990: 37.4,
              1995: 39.2, 2000: 40.4, 2005: 42.0, 2010: 43.6, 2015: 45.5},
    "Spain": {1970: 30.4, 1975: 30.2, 1980: 30.9, 1985: 32.2, 1990: 33.8,
              1995: 35.6, 2000: 37.6, 2005: 38.6, 2010: 40.0, 2015: 42.6},
    "Netherlands": {1970: 28.7, 1975: 29.8, 1980: 31.6, 1985: 33.4, 1990: 34.8,
                    1995: 36.2, 2000: 37.5, 2005: 38.9, 2010: 40.7, 2015: 42.1},
    "Austria": {1970: 34.3, 1975: 34.4, 1980: 35.0, 1985: 35.6, 1990: 36.1,
                1995: 36.7, 2000: 38.1, 2005: 40.0, 2010: 41.8, 2015: 43.0},
    "Finland": {1970: 30.1, 1975: 31.7, 1980: 33.4, 1985: 35.0, 1990: 36.5,
                1995: 37.8, 2000: 39.4, 2005: 40.9, 2010: 42.0, 2015: 42.5},
}

# Labour compensation share of value added, total economy (fraction).
KLEMS = {
    "United States": {1970: .680, 1975: .660, 1980: .665, 1985: .650, 1990: .650,
                      1995: .640, 2000: .660, 2005: .630, 2010: .620},
    "Japan": {1970: .640, 1975: .720, 1980: .700, 1985: .670, 1990: .645,
              1995: .665, 2000: .640, 2005: .590, 2010: .580},
    "Germany": {1970: .700, 1975: .745, 1980: .735, 1985: .705, 1990: .690,
                1993: .715, 1995: .705, 2000: .695, 2005: .650, 2007: .635,
                2010: .660},
    "United Kingdom": {1970: .715, 1975: .760, 1980: .720, 1985: .680, 1990: .715,
                       1995: .690, 2000: .710, 2005: .705, 2010: .710},
    "France": {1970: .720, 1975: .750, 1982: .770, 1985: .735, 1990: .680,
               1995: .665, 2000: .655, 2005: .660, 2010: .665},
    "Italy": {1970: .760, 1975: .780, 1980: .740, 1985: .700, 1990: .690,
              1995: .640, 2000: .620, 2005: .630, 2010: .640},
    "Spain": {1970: .680, 1975: .720, 1980: .700, 1985: .640, 1990: .640,
              1995: .630, 2000: .620, 2005: .600, 2010: .620},
    "Netherlands": {1970: .740, 1975: .790, 1980: .750, 1985: .680, 1990: .650,
                    1995: .650, 2000: .640, 2005: .615, 2010: .625},
    "Austria": {1970: .720, 1975: .760, 1980: .745, 1985: .720, 1990: .700,
                1995: .690, 2000: .650, 2005: .620, 2010: .630},
    "Finland": {1970: .740, 1975: .780, 1980: .730, 1985: .730, 1990: .760,
                1995: .680, 2000: .630, 2005: .640, 2010: .660},
}

# Total word recall (0-20), mean of the 2006 and 2010 waves, by age band.
COGNITION = [
    ("United States", 11.3, 8.9),
    ("Japan", 11.0, 8.7),
    ("Germany", 9.9, 7.7),
    ("United Kingdom", 12.3, 9.4),
    ("France", 9.6, 7.0),
    ("Italy", 8.0, 5.9),
    ("Spain", 7.5, 5.0),
    ("Netherlands", 10.2, 8.0),
    ("Austria", 10.0, 7.8),
]

SLUG = {
    "United States": "us", "Japan": "japan", "Germany": "germany",
    "United Kingdom": "uk", "France": "france", "Italy": "italy",
    "Spain": "spain", "Netherlands": "netherlands", "Austria": "austria",
    "Finland": "finland",
}


def interpolate(anchors):
    years = sorted(anchors)
    out = {}
    for lo, hi in zip(years, years[1:]):
        for y in range(lo, hi):
            w = (y - lo) / (hi - lo)
            out[y] = anchors[lo] * (1 - w) + anchors[hi] * w
    out[years[-1]] = anchors[years[-1]]
    return out


def write_series(path, header, series, digits):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        f.write(f"# {header}\n")
        f.write("year,value\n")
        for y in sorted(series):
            f.write(f"{y},{series[y]:.{digits}f}\n")


def main():
    write_series(ROOT / "us" / "labor_share_fed.csv",
                 "US wage and salary accruals share of GDI, percent (approximate)",
                 US_FED, 1)
    for country, anchors in MEDIAN_AGE.items():
        write_series(ROOT / SLUG[country] / "median_age.csv",
                     f"{country} median age, years (approximate, interpolated)",
                     interpolate(anchors), 2)
    for country, anchors in KLEMS.items():
        name = "labor_share_klems.csv" if country == "United States" else "labor_share.csv"
        write_series(ROOT / SLUG[country] / name,
                     f"{country} labour compensation share of value added (approximate, interpolated)",
                     interpolate(anchors), 4)
    with open(ROOT / "cognition.csv", "w") as f:
        f.write("# Total word recall by age band (approximate)\n")
        f.write("country,score_50s,score_70s,year_basis\n")
        for country, s50, s70 in COGNITION:
            f.write(f"{country},{s50},{s70},\"avg 2006,2010\"\n")
    with open(ROOT / "klems_manifest.csv", "w") as f:
        f.write("country,labor_csv,age_csv,source\n")
        for country in KLEMS:
            if country == "United States":
                continue
            s = SLUG[country]
            f.write(f"{country},{s}/labor_share.csv,{s}/median_age.csv,klems2013\n")
    with open(ROOT / "fig10_manifest.csv", "w") as f:
        f.write("country,labor_csv,age_csv,source\n")
        f.write("United States,us/labor_share_fed.csv,us/median_age.csv,fed\n")
        f.write("United States,us/labor_share_klems.csv,us/median_age.csv,klems2013\n")
        for country in KLEMS:
            if country == "United States":
                continue
            s = SLUG[country]
            f.write(f"{country},{s}/labor_share.csv,{s}/median_age.csv,klems2013\n")


if __name__ == "__main__":
    main()
