import json

import pytest

from kduncd import (
    IndeterminateDiagramError,
    PointStatus,
    Verdict,
    check_submatrix_conditions,
    classify_state,
    dft_matrix,
    diagram_to_csv,
    diagram_to_dict,
    enumerate_diagram,
    is_completely_incompatible,
    load_diagram,
    point_exists,
    predict_corollary1,
    predict_theorem1,
    predict_theorem2,
    predict_theorem3,
    save_diagram,
    support_profile,
    witness_state,
)

from sampling_oracle import sampled_present_set


# ---------------------------------------------------------------------------
# the three rank conditions


def test_conditions_d2_single_row():
    # M = (1, -1)/sqrt(2): rank 1 < 2; adding row 0 gives rank 2; either
    # column alone keeps rank 1
    ok, cert = check_submatrix_conditions(dft_matrix(2), [1], [0, 1])
    assert ok
    assert cert.base.rank == 1
    assert dict(kv for kv in ((k, c.rank) for k, c in cert.added)) == {0: 2}
    assert [c.rank for _, c in cert.removed] == [1, 1]


def test_conditions_d4_hyperbola_block():
    ok, cert = check_submatrix_conditions(dft_matrix(4), [1, 3], [0, 2])
    assert ok
    assert cert.base.rank == 1
    assert all(c.rank == 2 for _, c in cert.added)
    assert all(c.rank == 1 for _, c in cert.removed)


def test_conditions_fail_on_full_rank():
    ok, cert = check_submatrix_conditions(dft_matrix(4), [0, 1], [0, 1])
    assert not ok
    assert cert.base.rank == 2  # condition (i) fails
    assert cert.added == ()


def test_conditions_engines_agree():
    for engine in ("exact", "numeric"):
        ok, cert = check_submatrix_conditions(dft_matrix(6), [0, 3], [0, 2, 4], engine=engine)
        assert ok
        assert cert.base.rank == 1


def test_conditions_validate_indices():
    with pytest.raises(ValueError):
        check_submatrix_conditions(dft_matrix(4), [0, 0], [1])
    with pytest.raises(ValueError):
        check_submatrix_conditions(dft_matrix(4), [0], [])


# ---------------------------------------------------------------------------
# single points


def test_point_hole_d8():
    pt = point_exists(dft_matrix(8), 5, 2)
    assert pt.status is PointStatus.HOLE
    assert "exhausted" in pt.note


@pytest.mark.parametrize("point", [(5, 3), (4, 3)])
def test_point_holes_d9(point):
    pt = point_exists(dft_matrix(9), *point)
    assert pt.status is PointStatus.HOLE


@pytest.mark.parametrize("d", [1, 2, 3, 5, 6])
def test_point_full_profile_always_present(d):
    pt = point_exists(dft_matrix(d), d, d)
    assert pt.status is PointStatus.PRESENT
    assert pt.certificate.rows == ()


def test_point_basis_vector_present():
    pt = point_exists(dft_matrix(2), 1, 2)
    assert pt.status is PointStatus.PRESENT


def test_point_budget_yields_unknown_not_hole():
    pt = point_exists(dft_matrix(8), 5, 2, max_checks=10)
    assert pt.status is PointStatus.UNKNOWN
    assert "aborted" in pt.note


# ---------------------------------------------------------------------------
# whole diagrams


def test_diagram_d6_row_two(diagram_cache):
    assert diagram_cache(6).row_present(2) == frozenset({3, 4, 5, 6})


def test_diagram_d6_half_plane(diagram_cache):
    diag = diagram_cache(6)
    for a in range(1, 7):
        for b in range(1, 7):
            if a + b >= 7:
                assert diag.status(a, b) is PointStatus.PRESENT


def test_diagram_d4_matches_sampling_oracle(diagram_cache):
    sampled = sampled_present_set(4, samples=10_000, seed=7)
    assert diagram_cache(4).present_set() == sampled


@pytest.mark.parametrize("d", range(1, 13))
def test_diagram_symmetric(d, diagram_cache):
    assert diagram_cache(d).is_symmetric()


@pytest.mark.parametrize("d", range(1, 13))
def test_no_present_point_below_hyperbola(d, diagram_cache):
    assert all(a * b >= d for a, b in diagram_cache(d).present_set())


@pytest.mark.parametrize("d", range(1, 9))
def test_sym_reduce_gives_identical_statuses(d):
    full = enumerate_diagram(dft_matrix(d), sym_reduce=False)
    reduced = enumerate_diagram(dft_matrix(d), sym_reduce=True)
    assert {k: p.status for k, p in full.points.items()} == {
        k: p.status for k, p in reduced.points.items()
    }


@pytest.mark.parametrize("d", [5, 6, 7])
def test_exact_and_numeric_diagrams_agree(d, diagram_cache):
    exact = diagram_cache(d, engine="exact")
    numeric = diagram_cache(d, engine="numeric")
    assert {k: p.status for k, p in exact.points.items()} == {
        k: p.status for k, p in numeric.points.items()
    }


def test_enumerate_rejects_oversized_exact():
    with pytest.raises(ValueError):
        enumerate_diagram(dft_matrix(10), engine="exact")


@pytest.mark.slow
def test_engine_agreement_full_d10_enumeration():
    """Every rank the d=10 enumeration touches agrees across engines (the
    exact engine is forced past its default size limit for the comparison)."""
    diag = enumerate_diagram(dft_matrix(10), engine="both", allow_large=True)
    assert not diag.unknown_set()
    assert diag.is_symmetric()


def test_enumerate_budget_marks_unknown():
    diag = enumerate_diagram(dft_matrix(5), max_checks=2)
    assert diag.unknown_set()
    with pytest.raises(IndeterminateDiagramError):
        is_completely_incompatible(dft_matrix(5), diagram=diag)


def test_certificates_revalidate_with_both_engines(diagram_cache):
    diag = diagram_cache(6)
    for (a, b) in sorted(diag.present_set()):
        cert = diag.points[(a, b)].certificate
        for engine in ("exact", "numeric"):
            ok, again = check_submatrix_conditions(
                dft_matrix(6), cert.rows, cert.cols, engine=engine
            )
            assert ok, f"certificate for ({a},{b}) failed under {engine}"
            assert again.base.rank == cert.base.rank


# ---------------------------------------------------------------------------
# complete incompatibility


def test_complete_incompatibility_prime(diagram_cache):
    assert is_completely_incompatible(dft_matrix(5), diagram=diagram_cache(5))
    assert is_completely_incompatible(dft_matrix(2), diagram=diagram_cache(2))


def test_complete_incompatibility_fails_composite(diagram_cache):
    assert not is_completely_incompatible(dft_matrix(6), diagram=diagram_cache(6))


# ---------------------------------------------------------------------------
# witnesses


def test_witness_basis_point_d2(diagram_cache):
    u = dft_matrix(2)
    pt = diagram_cache(2).points[(1, 2)]
    psi = witness_state(u, pt, seed=5)
    profile = support_profile(psi, u)
    assert (profile.n_a, profile.n_b) == (1, 2)
    for r in pt.certificate.rows:  # an A-basis vector avoiding the certified rows
        assert abs(psi.amps_a[r]) < 1e-12


def test_witness_classical_point_d6(diagram_cache):
    u = dft_matrix(6)
    psi = witness_state(u, diagram_cache(6).points[(2, 3)], seed=6)
    assert classify_state(psi, u).verdict is Verdict.CLASSICAL
    profile = support_profile(psi, u)
    assert profile.n_a * profile.n_b == 6


def test_witness_nonclassical_point_d6(diagram_cache):
    u = dft_matrix(6)
    psi = witness_state(u, diagram_cache(6).points[(4, 4)], seed=7)
    assert classify_state(psi, u).verdict is Verdict.NONCLASSICAL


def test_witness_requires_present_point(diagram_cache):
    u = dft_matrix(8)
    hole = point_exists(u, 5, 2)
    with pytest.raises(ValueError):
        witness_state(u, hole, seed=0)


# ---------------------------------------------------------------------------
# closed-form predictions


def test_theorem1_prediction_examples():
    pts6 = predict_theorem1(6).points
    assert {(4, 2), (4, 3)} <= pts6  # divisor 2 with its first multiple
    assert (2, 3) in pts6 and (3, 2) in pts6
    assert (3, 3) not in pts6
    assert (3, 2) in predict_theorem1(4).points
    assert predict_theorem1(1).points == frozenset({(1, 1)})


def test_theorem1_claims_are_present(diagram_cache):
    for d in range(1, 9):
        assert predict_theorem1(d).points <= diagram_cache(d).present_set()


def test_corollary1_counts():
    assert predict_corollary1(2).points == frozenset({(1, 2), (2, 1), (2, 2)})
    assert len(predict_corollary1(6).points) == 21  # pairs from 1..6 with sum >= 7


def test_corollary1_region_present(diagram_cache):
    for d in range(1, 9):
        assert predict_corollary1(d).points <= diagram_cache(d).present_set()


@pytest.mark.parametrize(
    "d, n_as",
    [(8, {8, 7, 6, 4}), (6, {6, 5, 4, 3}), (10, {10, 9, 8, 5})],
)
def test_theorem2_row_sets(d, n_as):
    assert predict_theorem2(d).points == frozenset((a, 2) for a in n_as)


def test_theorem2_matches_enumeration(diagram_cache):
    for d in range(2, 9):
        predicted = {a for a, _ in predict_theorem2(d).points}
        assert diagram_cache(d).row_present(2) == predicted


def test_theorem3_row_sets():
    p9 = predict_theorem3(9)
    assert p9.points == frozenset((a, 3) for a in {9, 8, 7, 6, 3})
    assert p9.applicable
    p8 = predict_theorem3(8)
    assert not p8.applicable  # 4 divides 8 and is not prime
    assert p8.points == frozenset((a, 3) for a in {8, 7, 6, 4})
    p3 = predict_theorem3(3)
    assert p3.points == frozenset((a, 3) for a in {3, 2, 1})


def test_theorem3_matches_enumeration(diagram_cache):
    for d in range(3, 9):
        predicted = {a for a, _ in predict_theorem3(d).points}
        assert diagram_cache(d).row_present(3) == predicted


# ---------------------------------------------------------------------------
# serialization


def test_diagram_round_trip(tmp_path, diagram_cache):
    diag = diagram_cache(5)
    path = tmp_path / "diag.json"
    save_diagram(path, diag)
    first = path.read_bytes()
    loaded = load_diagram(path)
    assert diagram_to_dict(loaded) == diagram_to_dict(diag)
    save_diagram(path, loaded)
    assert path.read_bytes() == first


def test_diagram_csv_shape(diagram_cache):
    text = diagram_to_csv(diagram_cache(3))
    lines = text.strip().split("\n")
    assert lines[0] == "na,nb,status"
    assert len(lines) == 1 + 9
    assert lines[1] == "1,1,hole"
    assert lines[-1] == "3,3,present"


def test_diagram_json_schema(diagram_cache):
    payload = diagram_to_dict(diagram_cache(2))
    assert list(payload.keys()) == ["d", "engine", "points"]
    for point in payload["points"]:
        assert list(point.keys()) == ["na", "nb", "status", "rows", "cols"]
        if point["status"] == "present":
            assert isinstance(point["rows"], list) and isinstance(point["cols"], list)
        else:
            assert point["rows"] is None and point["cols"] is None
    json.dumps(payload)  # serializable
