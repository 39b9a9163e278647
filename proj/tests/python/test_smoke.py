import hypersat


EX11 = """\
ltl: (!rec) U (rec & X G !rec) & G (rec <-> X send)
hyperltl: forall p. exists q. F (send_p & rec_q)
"""

UNSAT3 = """\
ltl: (!a) U (a & X G !a) & X X X G !a
hyperltl: forall p. exists q. F (a_p & X a_q)
"""


def test_parse_and_classify():
    spec = hypersat.Specification.parse(EX11)
    assert set(spec.atoms) == {"rec", "send"}
    assert hypersat.classify(spec) == "single-eventuality"


def test_solve_intro_example():
    spec = hypersat.Specification.parse(EX11)
    result = hypersat.solve(spec)
    assert result["verdict"] == "sat"
    assert result["method"] == "pushdown"


def test_solve_unsat3_largest_iterations():
    spec = hypersat.Specification.parse(UNSAT3)
    result = hypersat.solve(spec, mode="largest")
    assert result["verdict"] == "unsat"
    assert result["iterations"] == 3


def test_eval_ltl():
    assert hypersat.eval_ltl("G a", [1], [1], ["a"])
    assert not hypersat.eval_ltl("G a", [1], [0], ["a"])
    assert hypersat.eval_ltl("a U b", [1, 2], [0], ["a", "b"])


def test_translate_hoa_roundtrip_header():
    hoa = hypersat.translate_hoa("F a", ["a"])
    assert hoa.startswith("HOA: v1")
    assert "Acceptance: 1 Inf(0)" in hoa


def test_benchmarks_and_random():
    names = [name for name, _ in hypersat.builtin_benchmarks()]
    assert "Example1.1" in names
    assert "Unsat-9" in names
    a = hypersat.random_spec(7, 12, 2)
    b = hypersat.random_spec(7, 12, 2)
    assert a.hyper == b.hyper


def test_tptp_emission():
    spec = hypersat.Specification.parse(
        "ltl: true\nhyperltl: forall p. exists q. G (a_p <-> a_q)\n"
    )
    doc = hypersat.emit_tptp(spec)
    assert "fof(theta, axiom," in doc
