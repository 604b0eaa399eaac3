#!/usr/bin/env python3
"""Regenerates data/mini/corpus.json, the bundled 20-table demo corpus.

The corpus is hand-designed to exercise every pipeline path: isomorphism
groups of several sizes, unions with and without anchor intersections,
reverse-union pivots of breadth 1 and >1, and one rejection per cleaning
reason (too_small x2, too_large, malformed, no_group).
"""

import json
import os

T = []


def table(tid, title, headers, rows, domain, source_url=None):
    rec = {"id": tid, "title": title, "headers": headers,
           "rows": [[str(c) for c in r] for r in rows], "domain": domain}
    if source_url:
        rec["source_url"] = source_url
    T.append(rec)


# --- literature: two [Name, Country, Year, Gender] tables (group A) ---------
table("t01", "List of Nobel Prize in Literature laureates, 1980–2020",
      ["Name", "Country", "Year", "Gender"],
      [["Czesław Miłosz", "Poland", 1980, "man"],
       ["Elias Canetti", "Bulgaria", 1981, "man"],
       ["Gabriel García Márquez", "Colombia", 1982, "man"],
       ["William Golding", "United Kingdom", 1983, "man"],
       ["Jaroslav Seifert", "Czechoslovakia", 1984, "man"],
       ["Claude Simon", "France", 1985, "man"],
       ["Wole Soyinka", "Nigeria", 1986, "man"],
       ["Joseph Brodsky", "United States", 1987, "man"],
       ["Naguib Mahfouz", "Egypt", 1988, "man"],
       ["Camilo José Cela", "Spain", 1989, "man"],
       ["Octavio Paz", "Mexico", 1990, "man"],
       ["V. S. Naipaul", "United Kingdom", 2001, "man"],
       ["J. M. Coetzee", "South Africa", 2003, "man"],
       ["Doris Lessing", "United Kingdom", 2007, "woman"],
       ["Kazuo Ishiguro", "United Kingdom", 2017, "man"]],
      "literature")

table("t02", "Neustadt International Prize for Literature laureates",
      ["Name", "Country", "Year", "Gender"],
      [["Giuseppe Ungaretti", "Italy", 1970, "man"],
       ["Gabriel García Márquez", "Colombia", 1972, "man"],
       ["Francis Ponge", "France", 1974, "man"],
       ["Elizabeth Bishop", "United States", 1976, "woman"],
       ["Czesław Miłosz", "Poland", 1978, "man"],
       ["Josef Škvorecký", "Czechoslovakia", 1980, "man"],
       ["Octavio Paz", "Mexico", 1982, "man"],
       ["Paavo Haavikko", "Finland", 1984, "man"],
       ["Max Frisch", "Switzerland", 1986, "man"],
       ["Raja Rao", "India", 1988, "man"]],
      "literature")

# --- literature: two [Name, Country, Year, Work] tables (group B) -----------
table("t03", "Booker Prize winners, 1969–2000",
      ["Name", "Country", "Year", "Work"],
      [["P. H. Newby", "United Kingdom", 1969, "Something to Answer For"],
       ["V. S. Naipaul", "United Kingdom", 1971, "In a Free State"],
       ["William Golding", "United Kingdom", 1980, "Rites of Passage"],
       ["Salman Rushdie", "United Kingdom", 1981, "Midnight's Children"],
       ["Thomas Keneally", "Australia", 1982, "Schindler's Ark"],
       ["J. M. Coetzee", "South Africa", 1983, "Life & Times of Michael K"],
       ["Anita Brookner", "United Kingdom", 1984, "Hotel du Lac"],
       ["Keri Hulme", "New Zealand", 1985, "The Bone People"],
       ["Kingsley Amis", "United Kingdom", 1986, "The Old Devils"],
       ["Penelope Lively", "United Kingdom", 1987, "Moon Tiger"],
       ["Peter Carey", "Australia", 1988, "Oscar and Lucinda"],
       ["Kazuo Ishiguro", "United Kingdom", 1989, "The Remains of the Day"],
       ["A. S. Byatt", "United Kingdom", 1990, "Possession"],
       ["Margaret Atwood", "Canada", 2000, "The Blind Assassin"]],
      "literature")

table("t04", "James Tait Black Memorial Prize fiction winners (selected)",
      ["Name", "Country", "Year", "Work"],
      [["Graham Greene", "United Kingdom", 1948, "The Heart of the Matter"],
       ["Iris Murdoch", "United Kingdom", 1973, "The Black Prince"],
       ["John le Carré", "United Kingdom", 1977, "The Honourable Schoolboy"],
       ["J. M. Coetzee", "South Africa", 1980, "Waiting for the Barbarians"],
       ["Salman Rushdie", "United Kingdom", 1981, "Midnight's Children"],
       ["Angela Carter", "United Kingdom", 1984, "Nights at the Circus"],
       ["Kazuo Ishiguro", "United Kingdom", 1986, "An Artist of the Floating World"],
       ["George Mackay Brown", "United Kingdom", 1994, "Beside the Ocean of Time"],
       ["Graham Swift", "United Kingdom", 1996, "Last Orders"],
       ["Andrew Miller", "United Kingdom", 1997, "Ingenious Pain"]],
      "literature")

# --- science: two [Name, Country, Year] tables ------------------------------
table("t05", "Nobel Prize in Physics laureates, 1901–1925",
      ["Name", "Country", "Year"],
      [["Wilhelm Conrad Röntgen", "Germany", 1901],
       ["Hendrik Lorentz", "Netherlands", 1902],
       ["Henri Becquerel", "France", 1903],
       ["Lord Rayleigh", "United Kingdom", 1904],
       ["Philipp Lenard", "Germany", 1905],
       ["J. J. Thomson", "United Kingdom", 1906],
       ["Albert A. Michelson", "United States", 1907],
       ["Guglielmo Marconi", "Italy", 1909],
       ["Max Planck", "Germany", 1918],
       ["Albert Einstein", "Germany", 1921],
       ["Niels Bohr", "Denmark", 1922],
       ["Robert A. Millikan", "United States", 1923]],
      "science")

table("t06", "Copley Medal recipients (selected)",
      ["Name", "Country", "Year"],
      [["William Huggins", "United Kingdom", 1898],
       ["Lord Rayleigh", "United Kingdom", 1899],
       ["Albert A. Michelson", "United States", 1907],
       ["J. J. Thomson", "United Kingdom", 1914],
       ["Ivan Pavlov", "Russia", 1915],
       ["Hendrik Lorentz", "Netherlands", 1918],
       ["Ernest Rutherford", "New Zealand", 1922],
       ["Albert Einstein", "Germany", 1925],
       ["Max Planck", "Germany", 1929],
       ["Niels Bohr", "Denmark", 1938]],
      "science")

# --- games: two year-keyed tables -------------------------------------------
years = [1981, 1984, 1985, 1986, 1987, 1990, 1993, 1995, 2000, 2006]
chess = {1981: ("Anatoly Karpov", "Soviet Union"), 1984: ("Anatoly Karpov", "Soviet Union"),
         1985: ("Garry Kasparov", "Soviet Union"), 1986: ("Garry Kasparov", "Soviet Union"),
         1987: ("Garry Kasparov", "Soviet Union"), 1990: ("Garry Kasparov", "Soviet Union"),
         1993: ("Garry Kasparov", "Russia"), 1995: ("Garry Kasparov", "Russia"),
         2000: ("Vladimir Kramnik", "Russia"), 2006: ("Vladimir Kramnik", "Russia")}
darts = {1981: ("Eric Bristow", "England"), 1984: ("Eric Bristow", "England"),
         1985: ("Eric Bristow", "England"), 1986: ("Eric Bristow", "England"),
         1987: ("John Lowe", "England"), 1990: ("Phil Taylor", "England"),
         1993: ("John Part", "Canada"), 1995: ("Phil Taylor", "England"),
         2000: ("Phil Taylor", "England"), 2006: ("Phil Taylor", "England")}
table("t07", "World Chess Championship matches (selected)",
      ["Year", "Champion", "Country"],
      [[y, chess[y][0], chess[y][1]] for y in years], "games")
table("t08", "World Darts Championship finals (selected)",
      ["Year", "Champion", "Country"],
      [[y, darts[y][0], darts[y][1]] for y in years], "games")

# --- sport: tennis [Player, Country, Titles] --------------------------------
table("t09", "Most men's singles Grand Slam titles (selected)",
      ["Player", "Country", "Titles"],
      [["Novak Djokovic", "Serbia", 24],
       ["Rafael Nadal", "Spain", 22],
       ["Roger Federer", "Switzerland", 20],
       ["Pete Sampras", "United States", 14],
       ["Björn Borg", "Sweden", 11],
       ["Rod Laver", "Australia", 11],
       ["Ivan Lendl", "Czechoslovakia", 8],
       ["Jimmy Connors", "United States", 8],
       ["Andre Agassi", "United States", 8],
       ["John McEnroe", "United States", 7]],
      "sport")

table("t10", "ATP Finals titles leaders (selected)",
      ["Player", "Country", "Titles"],
      [["Novak Djokovic", "Serbia", 7],
       ["Roger Federer", "Switzerland", 6],
       ["Ivan Lendl", "Czechoslovakia", 5],
       ["Pete Sampras", "United States", 5],
       ["Ilie Năstase", "Romania", 4],
       ["Boris Becker", "Germany", 3],
       ["John McEnroe", "United States", 3],
       ["Björn Borg", "Sweden", 2],
       ["Andre Agassi", "United States", 1],
       ["Michael Stich", "Germany", 1]],
      "sport")

# --- literature with a dropped Notes column ---------------------------------
table("t11", "Miguel de Cervantes Prize winners (selected)",
      ["Name", "Country", "Year", "Notes"],
      [["Jorge Guillén", "Spain", 1976, "poet"],
       ["Alejo Carpentier", "Cuba", 1977, "novelist"],
       ["Jorge Luis Borges", "Argentina", 1979, "shared award"],
       ["Octavio Paz", "Mexico", 1981, "essayist"],
       ["Ernesto Sábato", "Argentina", 1984, "novelist"],
       ["Carlos Fuentes", "Mexico", 1987, "novelist"],
       ["María Zambrano", "Spain", 1988, "first woman winner"],
       ["Augusto Roa Bastos", "Paraguay", 1989, "novelist"],
       ["Mario Vargas Llosa", "Peru", 1994, "novelist"],
       ["Camilo José Cela", "Spain", 1995, "novelist"]],
      "literature")

# --- rejections --------------------------------------------------------------
table("t12", "Prix Goncourt winners, 1903–1911 (partial)",
      ["Name", "Country", "Year"],
      [["John-Antoine Nau", "France", 1903],
       ["Léon Frapié", "France", 1904],
       ["Claude Farrère", "France", 1905],
       ["Jérôme Tharaud", "France", 1906],
       ["Émile Moselly", "France", 1907],
       ["Francis de Miomandre", "France", 1908],
       ["Marius-Ary Leblond", "France", 1909],
       ["Louis Pergaud", "France", 1910],
       ["Alphonse de Châteaubriant", "France", 1911]],
      "literature")  # 9 rows -> too_small

table("t13", "Numbered minor planets, first 250",
      ["Designation", "Discoverer", "Year"],
      [[f"({i}) Minor planet {i}", f"Observatory {1 + i % 17}", 1801 + i % 120]
       for i in range(1, 251)],
      "science")  # 250 rows -> too_large

table("t14", "Olympic host cities (selected)",
      ["City", "Year"],
      [["Athens", 1896], ["Paris", 1900], ["St. Louis", 1904], ["London", 1908],
       ["Stockholm", 1912], ["Antwerp", 1920], ["Paris", 1924], ["Amsterdam", 1928],
       ["Los Angeles", 1932], ["Berlin", 1936], ["London", 1948], ["Helsinki", 1952]],
      "sport")  # 2 columns -> too_small

table("t15", "European capitals by population",
      ["City", "Country", "Population"],
      [["Moscow", "Russia", 13010112],
       ["London", "United Kingdom", 8799800],
       ["Berlin", "^", 3850809],
       ["Madrid", "Spain", 3305408],
       ["Rome", "^", 2749031],
       ["Paris", "France", 2102650],
       ["Vienna", "Austria", 1982097],
       ["Bucharest", "^", 1716961],
       ["Budapest", "Hungary", 1706851],
       ["Warsaw", "Poland", 1863056],
       ["Belgrade", "Serbia", 1197714],
       ["Prague", "Czech Republic", 1357326]],
      "geography")  # merged-cell markers -> malformed

table("t16", "Eight-thousanders of the Himalayas and Karakoram",
      ["Mountain", "Height (m)", "Range", "First ascent"],
      [["Mount Everest", 8849, "Mahalangur Himalaya", 1953],
       ["K2", 8611, "Baltoro Karakoram", 1954],
       ["Kangchenjunga", 8586, "Kangchenjunga Himalaya", 1955],
       ["Lhotse", 8516, "Mahalangur Himalaya", 1956],
       ["Makalu", 8485, "Mahalangur Himalaya", 1955],
       ["Cho Oyu", 8188, "Mahalangur Himalaya", 1954],
       ["Dhaulagiri I", 8167, "Dhaulagiri Himalaya", 1960],
       ["Manaslu", 8163, "Manaslu Himalaya", 1956],
       ["Nanga Parbat", 8126, "Nanga Parbat Himalaya", 1953],
       ["Annapurna I", 8091, "Annapurna Himalaya", 1950],
       ["Gasherbrum I", 8080, "Baltoro Karakoram", 1958],
       ["Broad Peak", 8051, "Baltoro Karakoram", 1957],
       ["Gasherbrum II", 8035, "Baltoro Karakoram", 1956],
       ["Shishapangma", 8027, "Jugal Himalaya", 1964]],
      "geography")  # unique signature -> no_group

# --- more literature [Name, Country, Year] ----------------------------------
table("t17", "Hugo Award for Best Novel winners (selected)",
      ["Name", "Country", "Year"],
      [["Isaac Asimov", "United States", 1973],
       ["Ursula K. Le Guin", "United States", 1975],
       ["Joe Haldeman", "United States", 1976],
       ["Kate Wilhelm", "United States", 1977],
       ["Frederik Pohl", "United States", 1978],
       ["Vonda McIntyre", "United States", 1979],
       ["Arthur C. Clarke", "United Kingdom", 1980],
       ["Joan D. Vinge", "United States", 1981],
       ["C. J. Cherryh", "United States", 1982],
       ["David Brin", "United States", 1984],
       ["William Gibson", "United States", 1985]],
      "literature")

table("t18", "Prix Goncourt winners, 1919–1928",
      ["Name", "Country", "Year"],
      [["Marcel Proust", "France", 1919],
       ["Ernest Pérochon", "France", 1920],
       ["René Maran", "France", 1921],
       ["Henri Béraud", "France", 1922],
       ["Lucien Fabre", "France", 1923],
       ["Thierry Sandre", "France", 1924],
       ["Maurice Genevoix", "France", 1925],
       ["Henri Deberly", "France", 1926],
       ["Maurice Bedel", "France", 1927],
       ["Maurice Constantin-Weyer", "France", 1928]],
      "literature")

# --- sport: football scorers [Player, Country, Goals] -----------------------
table("t19", "La Liga all-time top scorers (selected)",
      ["Player", "Country", "Goals"],
      [["Lionel Messi", "Argentina", 474],
       ["Cristiano Ronaldo", "Portugal", 311],
       ["Telmo Zarra", "Spain", 251],
       ["Hugo Sánchez", "Mexico", 234],
       ["Raúl", "Spain", 228],
       ["Alfredo Di Stéfano", "Argentina", 227],
       ["César Rodríguez", "Spain", 221],
       ["Quini", "Spain", 219],
       ["Pahiño", "Spain", 210],
       ["Edmundo Suárez", "Spain", 195]],
      "sport")

table("t20", "Serie A all-time top scorers (selected)",
      ["Player", "Country", "Goals"],
      [["Silvio Piola", "Italy", 274],
       ["Francesco Totti", "Italy", 250],
       ["Gunnar Nordahl", "Sweden", 225],
       ["Giuseppe Meazza", "Italy", 216],
       ["José Altafini", "Italy", 216],
       ["Roberto Baggio", "Italy", 205],
       ["Ciro Immobile", "Italy", 201],
       ["Kurt Hamrin", "Sweden", 190],
       ["Giuseppe Signori", "Italy", 188],
       ["Cristiano Ronaldo", "Portugal", 101]],
      "sport")

out = os.path.join(os.path.dirname(__file__), "..", "data", "mini", "corpus.json")
os.makedirs(os.path.dirname(out), exist_ok=True)
with open(out, "w", encoding="utf-8") as f:
    json.dump(T, f, ensure_ascii=False, indent=1)
    f.write("\n")
print(f"wrote {out}: {len(T)} tables")
