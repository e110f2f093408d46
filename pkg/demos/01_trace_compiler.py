"""Compile free-group words over <a, b> into trace polynomials.

Every word w in the free group on a, b has a trace function on pairs of
determinant-1 matrices, and that function is a polynomial with integer
coefficients in the three coordinates

    x = tr(A),  y = tr(B),  z = tr(AB).

This script compiles a handful of words, shows formal derivatives, and
cross-checks the compiled polynomial against direct matrix multiplication
on an exact integer matrix pair.
"""

from sl2arc import Mat2, evaluate, parse_word, trace_polynomial

WORDS = ["a", "b", "ab", "aab", "abAB", "a^2 b a b", "b^-1 a b a"]

print("== compiled trace polynomials ==")
for text in WORDS:
    word = parse_word(text)
    poly = trace_polynomial(word)
    print(f"  tr({word.spelled() or '1'}):  {poly}")

print()
print("== formal derivatives of tr([a, b]) ==")
comm = trace_polynomial(parse_word("abAB"))
for var in ("x", "y", "z"):
    print(f"  d/d{var}:  {comm.derivative(var)}")

print()
print("== exact oracle: polynomial value vs direct multiplication ==")
A = Mat2(2, 3, 1, 2)   # det = 1
B = Mat2(1, -1, 1, 0)  # det = 1
x, y, z = A.trace(), B.trace(), (A @ B).trace()
print(f"  A = {A.entries()}, B = {B.entries()},  (x, y, z) = ({x}, {y}, {z})")
for text in WORDS:
    word = parse_word(text)
    compiled = trace_polynomial(word).evaluate(x, y, z)
    direct = evaluate(word, A, B).trace()
    status = "ok" if compiled == direct else "MISMATCH"
    print(f"  {word.spelled():>10}: compiled {compiled!s:>8}  direct {direct!s:>8}  {status}")
