"""Built-in May spectral sequence pages in the line-oriented algebra format.

Format (one item per line, ``#`` starts a comment):

    algebra <name>
    gen <name> <m> <s> <f> <w>
    rel <polynomial>
    d <r> <generator> = <polynomial>

Degrees are (May filtration, stem, Adams filtration, weight).  On these pages
tau has degree (0, 0, 0, -1).
"""

from __future__ import annotations

# Cobar-type DGA whose homology is the E2 page.
GRADED_DGA = """
algebra gr-dga
gen h10 1 0 1 0
gen h11 1 1 1 1
gen h12 1 3 1 2
gen h20 2 2 1 1
gen h21 2 5 1 3
gen h30 3 6 1 3
d 1 h20 = h10 h11
d 1 h21 = h11 h12
d 1 h30 = h10 h21 + h20 h12
"""

E2 = """
algebra E2
gen h0 1 0 1 0
gen h1 1 1 1 1
gen h2 1 3 1 2
gen b20 4 4 2 2
gen b21 4 10 2 6
gen b30 6 12 2 6
gen h0(1) 4 7 2 4
rel h0 h1
rel h1 h2
rel h2 b20 + h0 h0(1)
rel h2 h0(1) + h0 b21
rel h0(1)^2 + b20 b21 + h1^2 b30
d 2 b20 = tau h1^3 + h0^2 h2
d 2 b21 = h2^3
d 2 b30 = tau h1 b21
d 2 h0(1) = h0 h2^2
"""

E4 = """
algebra E4
gen h0 1 0 1 0
gen h1 1 1 1 1
gen h2 1 3 1 2
gen P 8 8 4 4
gen c 5 8 3 5
gen u 5 11 3 7
gen alpha 7 12 3 6
gen d 8 14 4 8
gen nu 7 15 3 8
gen e 8 17 4 10
gen g 8 20 4 12
gen D 12 24 4 12
# (1)
rel h0 h1
rel h1 h2
rel h0^2 h2 + tau h1^3
rel h0 h2^2
rel h2^3
# (2)
rel tau u
rel tau h1^2 c
rel tau c d
rel tau c e
rel tau c g
# (3)
rel h0^2 nu + tau h1 d
rel h0 h2 nu + tau h1 e
rel h2^2 nu + tau h1 g
# (4)
rel h2 d + h0 e
rel h2 e + h0 g
rel h2 alpha + h0 nu
# (5)
rel h0 c
rel h2 c
rel h0 u
rel h2 u
rel h1 alpha
rel h1 nu
# (6)
rel c^2 + h1^2 d
rel u^2 + h1^2 g
rel c u + h1^2 e
rel e^2 + d g
# (7)
rel u d + c e
rel u e + c g
rel nu d + alpha e
rel nu e + alpha g
# (8)
rel c alpha
rel c nu
rel u alpha
rel u nu
# (9)
rel alpha^2 + h0^2 D
rel alpha nu + h0 h2 D
rel nu^2 + h2^2 D
# (10)
rel h0^2 d + P h2^2
rel h0 alpha d + P h2 nu
rel d^2 + h1^4 D + P g
d 4 D = tau^2 h2 g
"""

_EINF_HEAD = """
algebra Einf
gen h0 1 0 1 0
gen h1 1 1 1 1
gen h2 1 3 1 2
gen P 8 8 4 4
gen c 5 8 3 5
gen u 5 11 3 7
gen alpha 7 12 3 6
gen d 8 14 4 8
gen nu 7 15 3 8
gen e 8 17 4 10
gen g 8 20 4 12
gen Dh1 13 25 5 13
gen Dc 17 32 7 17
gen Du 17 35 7 19
gen D2 24 48 8 24
# (1)
rel h0 h1
rel h1 h2
rel h0^2 h2 + tau h1^3
rel h0 h2^2
rel h2^3
# (2)
rel tau u
rel tau h1^2 c
rel tau h1^2 Dc
rel tau Du
rel tau c d
rel tau c e
rel tau c g
rel tau d Dc
rel tau e Dc
rel tau g Dc
rel tau^2 h2 g
# (3)
rel h0^2 nu + tau h1 d
rel h0 h2 nu + tau h1 e
rel h2^2 nu + tau h1 g
rel h0 alpha nu + tau h1^2 Dh1
# (4)
rel h2 d + h0 e
rel h2 e + h0 g
rel h2 alpha + h0 nu
# (5)
rel h0 c
rel h2 c
rel h0 u
rel h2 u
rel h1 alpha
rel h1 nu
rel h0 Dh1
rel h2 Dh1
rel h0 Dc
rel h2 Dc
rel h0 Du
rel h2 Du
rel h0 nu^2
rel h2 nu^2
# (6)
rel h0^2 d + P h2^2
rel h0 alpha d + P h2 nu
rel alpha^2 d + P nu^2
# (7)
rel alpha^2 nu + tau d Dh1
rel alpha nu^2 + tau e Dh1
rel nu^3 + tau g Dh1
rel alpha^4 + h0^4 D2
"""

# Multiplication table of E-infinity: (row, column, product).
EINF_PRODUCTS: tuple[tuple[str, str, str], ...] = (
    ("c", "c", "h1^2 d"), ("c", "u", "h1^2 e"), ("c", "alpha", "0"), ("c", "d", "c d"), ("c", "nu", "0"),
    ("c", "e", "u d"), ("c", "Dh1", "h1 Dc"), ("c", "Dc", "h1 d Dh1"), ("c", "Du", "h1 e Dh1"),
    ("u", "u", "h1^2 g"), ("u", "alpha", "0"), ("u", "d", "c e"), ("u", "nu", "0"), ("u", "e", "c g"),
    ("u", "Dh1", "h1 Du"), ("u", "Dc", "h1 e Dh1"), ("u", "Du", "h1 g Dh1"),
    ("alpha", "alpha", "alpha^2"), ("alpha", "d", "alpha d"), ("alpha", "nu", "alpha nu"), ("alpha", "e", "nu d"),
    ("alpha", "Dh1", "0"), ("alpha", "Dc", "0"), ("alpha", "Du", "0"),
    ("d", "d", "h1^3 Dh1 + P g"), ("d", "nu", "alpha e"), ("d", "e", "d e"), ("d", "Dh1", "d Dh1"),
    ("d", "Dc", "d Dc"), ("d", "Du", "e Dc"),
    ("nu", "nu", "nu^2"), ("nu", "e", "alpha g"), ("nu", "Dh1", "0"), ("nu", "Dc", "0"), ("nu", "Du", "0"),
    ("e", "e", "d g"), ("e", "Dh1", "e Dh1"), ("e", "Dc", "d Du"), ("e", "Du", "g Dc"),
    ("Dh1", "Dh1", "h1^2 D2"), ("Dh1", "Dc", "h1 c D2"), ("Dh1", "Du", "h1 u D2"),
    ("Dc", "Dc", "h1^2 d D2"), ("Dc", "Du", "h1^2 e D2"),
    ("Du", "Du", "h1^2 g D2"),
)


def _einf_text() -> str:
    lines = [_EINF_HEAD.rstrip(), "# multiplication table"]
    for a, b, v in EINF_PRODUCTS:
        lines.append(f"rel {a} {b} + {v}" if v != "0" else f"rel {a} {b}")
    return "\n".join(lines) + "\n"


EINF = _einf_text()
