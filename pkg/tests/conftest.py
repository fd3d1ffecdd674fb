from fractions import Fraction

from hypothesis import strategies as st

from hessclass.polyring import MultiPoly, VarSet

X3 = VarSet.x(3)


@st.composite
def polys(draw, varset=X3, max_terms=5, max_exp=3):
    n = len(varset)
    terms = draw(st.dictionaries(
        st.tuples(*[st.integers(0, max_exp)] * n),
        st.one_of(st.integers(-9, 9), st.fractions(-5, 5, max_denominator=4)),
        max_size=max_terms,
    ))
    return MultiPoly(varset, terms)


def to_sympy(f: MultiPoly):
    import sympy

    syms = sympy.symbols(f.varset.names)
    return sympy.expand(sum(
        (sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
         * sympy.Mul(*[s ** e for s, e in zip(syms, exp)]) for exp, c in f.items()),
        sympy.Integer(0),
    ))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
