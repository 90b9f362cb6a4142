import json
from fractions import Fraction as F

import pytest

from rc.exactmath import parse_poly, rat_mod
from rc.exactmath import legendre as leg_sym
from rc.congruence import (
    BinomExpr,
    Bound,
    C,
    CongruenceClaim,
    Domain,
    N,
    SumNode,
    SUM_T_PRODUCTS_8K9,
    SUM_T_PRODUCTS_16K21,
    SUM_W_SQUARES,
    builtin_claims,
    check_claim_at,
    claim_from_json,
    claim_to_json,
    div,
    eval_expr,
    eval_sum,
    expr_from_json,
    expr_to_json,
    format_report_table,
    get_claim,
    load_claims_document,
    mul,
    primes_in,
    report_to_json,
    seq,
    sub,
    suite_range,
    verify_claim_range,
)
from rc.sequences import T, W, binom
from rc.telescoper import find_telescoper, partial_sum


def test_catalogue_size_and_unique_ids():
    claims = builtin_claims()
    assert len(claims) >= 16
    ids = [c.claim_id for c in claims]
    assert len(set(ids)) == len(ids)


def test_eval_sum_examples():
    assert eval_sum(SUM_W_SQUARES, 5) == 7805
    assert eval_sum(SUM_T_PRODUCTS_8K9, 7) == 144079992
    assert eval_sum(SUM_T_PRODUCTS_8K9, 0) == 0  # empty range


def test_eval_expr_examples():
    assert eval_expr(get_claim("theorem-1.1ii").rhs, 5) == 61
    assert eval_expr(get_claim("theorem-1.3ii").rhs, 5) == F(-4145, 2)
    assert eval_expr(get_claim("sun-divisibility").modulus, 5) == 100


def test_check_claim_spot_values():
    r = check_claim_at(get_claim("theorem-1.1i"), 2)
    assert (r.status, r.lhs, r.rhs, r.modulus) == ("pass", 26, 2, 4)
    r = check_claim_at(get_claim("theorem-1.1i"), 5)
    assert r.lhs == 7805 and r.status == "pass"
    r = check_claim_at(get_claim("theorem-1.2"), 7)
    assert r.status == "pass"
    assert rat_mod(r.lhs, 343) == 98 == rat_mod(r.rhs, 343)
    r = check_claim_at(get_claim("theorem-1.3ii"), 5)
    assert r.status == "pass"
    assert rat_mod(r.lhs, 125) == 115 == rat_mod(r.rhs, 125)
    r = check_claim_at(get_claim("theorem-1.3i"), 2)
    assert (r.lhs, r.rhs) == (486, 54) and r.status == "pass"


def test_out_of_domain_points():
    assert check_claim_at(get_claim("theorem-1.2"), 6).status == "out_of_domain"
    assert check_claim_at(get_claim("theorem-1.2"), 3).status == "out_of_domain"
    assert check_claim_at(get_claim("theorem-1.3ii"), 2).status == "out_of_domain"


def test_theorem_11ii_includes_p3():
    r = check_claim_at(get_claim("theorem-1.1ii"), 3)
    assert r.status == "pass"
    assert r.lhs == 17  # (9 + 17 + 25) / 3


def test_non_invertible_denominator_is_a_failure_not_a_crash():
    claim = CongruenceClaim(
        claim_id="bad-denominator",
        description="1/2 mod 4 cannot be reduced",
        lhs=C(F(1, 2)),
        rhs=C(0),
        modulus=C(4),
        domain=Domain("integers", 1),
    )
    r = check_claim_at(claim, 1)
    assert r.status == "fail"
    assert "not invertible" in r.reason


def test_degenerate_zero_modulus_requires_equality():
    # the quartic divisibility modulus vanishes at n=1; the sum is 0 there
    r = check_claim_at(get_claim("sun-divisibility"), 1)
    assert r.status == "pass" and r.modulus == 0 and r.lhs == 0


@pytest.mark.parametrize(
    "claim_id",
    [c.claim_id for c in builtin_claims()],
)
def test_every_builtin_claim_passes_its_suite_range(claim_id):
    lo, hi = suite_range(claim_id)
    rep = verify_claim_range(get_claim(claim_id), lo, hi)
    assert rep.ok, [(f.n, f.reason) for f in rep.failures[:3]]
    assert rep.points_checked > 0


def test_flagged_point_for_theorem_13ii():
    rep = verify_claim_range(get_claim("theorem-1.3ii"), 2, 300)
    assert rep.ok
    assert len(rep.flagged) == 1
    note = rep.flagged[0]
    assert note.n == 2 and note.status == "fail"
    assert rat_mod(note.lhs, 8) == 3
    assert rat_mod(note.rhs, 8) == 5


def test_parallel_verification_is_deterministic():
    claim = get_claim("theorem-1.1i")
    a = verify_claim_range(claim, 1, 200, jobs=1)
    b = verify_claim_range(claim, 1, 200, jobs=4)
    assert a.points_checked == b.points_checked
    assert a.failures == b.failures == ()


def test_primes_in():
    assert primes_in(2, 20, exclude={3}) == [2, 5, 7, 11, 13, 17, 19]
    assert primes_in(3, 10, parity="odd") == [3, 5, 7]
    assert primes_in(990, 1000) == [991, 997]
    with pytest.raises(ValueError):
        primes_in(2, 10**7)


def test_domain_membership():
    d = Domain("primes", 5, parity="odd", exclude=frozenset({7}))
    assert d.contains(11) and not d.contains(7) and not d.contains(2)
    assert not d.contains(9)
    assert d.points(1, 20) == [5, 11, 13, 17, 19]
    assert "primes" in d.describe()


def test_telescoping_consistency_with_certificates():
    # two independent routes: direct summation vs certificate difference
    pairs = [
        (
            SUM_W_SQUARES,
            find_telescoper("W", "W", parse_poly("8*k+9"), (0, 0), (-2, 0), deg_bound=2),
        ),
        (
            SUM_T_PRODUCTS_8K9,
            find_telescoper("T", "T", parse_poly("k*(k+1)*(8*k+9)"), (0, 1), (-1, 0), deg_bound=4),
        ),
        (
            SUM_T_PRODUCTS_16K21,
            find_telescoper("T", "T", parse_poly("(k+1)*(16*k+21)"), (0, 1), (-1, 0), deg_bound=6),
        ),
    ]
    for spec, cert in pairs:
        assert cert is not None
        for n in range(0, 201):
            assert eval_sum(spec, n) == partial_sum(cert, n)


def test_t_prime_expansion_identity():
    # T(n) - 1 = (n/2) sum_{k=1}^{(n-1)/2} binom(n-1, 2k-1) binom(2k, k) / k
    # holds exactly for odd n, not just primes
    for n in range(3, 60, 2):
        total = F(0)
        for k in range(1, (n - 1) // 2 + 1):
            total += F(binom(n - 1, 2 * k - 1) * binom(2 * k, k), k)
        assert F(n, 2) * total == T.term(n) - 1


def test_lemma_21_exact_small_case():
    a, b = leg_sym(-3, 5), leg_sym(-1, 5)
    assert W.term(5) == 29 == -1 - 5 * (1 + 3 * a - 4 * b)


def test_claim_json_round_trip_all_builtins():
    for claim in builtin_claims():
        doc = claim_to_json(claim)
        back = claim_from_json(json.loads(json.dumps(doc)))
        assert claim_to_json(back) == doc
        assert back.domain == claim.domain
    # verdicts survive the round trip
    claim = claim_from_json(claim_to_json(get_claim("theorem-1.1i")))
    assert check_claim_at(claim, 5).status == "pass"


def test_expression_json_round_trip():
    exprs = [
        get_claim("theorem-1.3ii").rhs,
        get_claim("central-binom-telescope").lhs,
        div(SumNode(SUM_W_SQUARES), N),
        mul(C(F(9, 2)), seq("W", -1), BinomExpr(Bound(2, 0, 1), Bound(1, 0, 1))),
    ]
    for e in exprs:
        doc = expr_to_json(e)
        assert expr_to_json(expr_from_json(doc)) == doc
        assert eval_expr(expr_from_json(doc), 7) == eval_expr(e, 7)


def test_load_claims_document_with_custom_sequence():
    doc = {
        "sequences": [
            {
                "name": "pow2",
                "recurrence": {"coeffs": [["-2"], ["1"]]},
                "initial": {"0": "1"},
            }
        ],
        "claims": [
            {
                "id": "pow2-mod-7",
                "description": "2^n cycles mod 7",
                "lhs": {"seq": "pow2", "shift": 3},
                "rhs": {"mul": [{"const": "8"}, {"seq": "pow2", "shift": 0}]},
                "modulus": {"const": "7"},
                "domain": {"kind": "integers", "start": 0},
            }
        ],
    }
    (claim,) = load_claims_document(doc)
    rep = verify_claim_range(claim, 0, 30)
    assert rep.ok and rep.points_checked == 31


def test_report_rendering():
    rep = verify_claim_range(get_claim("theorem-1.3ii"), 2, 60)
    doc = report_to_json(rep)
    assert doc["verdict"] == "pass"
    assert doc["flagged"][0]["n"] == 2
    table = format_report_table([rep])
    assert "theorem-1.3ii" in table and "pass" in table and "note:" in table


def test_failures_are_data_with_deterministic_details():
    wrong = CongruenceClaim(
        claim_id="wrong",
        description="deliberately off by one",
        lhs=SumNode(SUM_W_SQUARES),
        rhs=sub(N, C(1)),
        modulus=mul(C(2), N),
        domain=Domain("integers", 1),
    )
    rep = verify_claim_range(wrong, 1, 20)
    assert not rep.ok
    again = verify_claim_range(wrong, 1, 20)
    assert rep.failures == again.failures
    assert all(r.status == "fail" for r in rep.failures)
