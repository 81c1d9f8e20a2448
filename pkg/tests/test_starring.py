import json

import pytest

from amplekit.constructions import (band_sphere, barycentric_of_cubical, cubical_grid,
                                    doubled_sphere)
from amplekit.core import SimplicialComplex, isomorphic, star_cluster
from amplekit.errors import NotABall, RejectedMove
from amplekit.homology import reduced_homology
from amplekit.io import digest
from amplekit.starring import (MoveLog, certify_ball, coface_violation, perform_starring,
                               replay_theorem3, replay_theorem4, shelling_order, verify_move_log)
from oracles import four_cycle

C = SimplicialComplex.from_facets
TRIANGLE = C([["a", "b", "c"]])
HOLLOW = C([["a", "b"], ["b", "c"], ["a", "c"]])


def test_certify_examples():
    cert = certify_ball(TRIANGLE)
    assert cert.level == "SurfaceDisk" and cert.boundary == HOLLOW
    D = star_cluster(band_sphere(5, 3), ["(1,3)", "(1,2)"])
    cert = certify_ball(D)
    assert cert.level == "SurfaceDisk" and len(D.vertices) == 8
    sq = barycentric_of_cubical(cubical_grid(1, 1))
    assert certify_ball(sq, "HomologyBall").level == "HomologyBall"
    assert certify_ball(sq).level == "SurfaceDisk"
    assert certify_ball(C([["p"]])).dimension == 0


def test_certify_rejections():
    with pytest.raises(NotABall) as exc:
        certify_ball(four_cycle())
    assert exc.value.criterion in ("boundary", "acyclic")
    with pytest.raises(NotABall):
        certify_ball(band_sphere(3, 0))
    with pytest.raises(NotABall):
        certify_ball(C([["a", "b", "c"], ["c", "d"]]))
    with pytest.raises(NotABall):
        certify_ball(SimplicialComplex())
    bowtie = C([["a", "b", "c"], ["a", "d", "e"]])
    with pytest.raises(NotABall):
        certify_ball(bowtie)


def test_shelling():
    sq = barycentric_of_cubical(cubical_grid(1, 1))
    order = shelling_order(sq)
    assert order is not None and sorted(order) == sorted(sq.facets)
    assert certify_ball(sq, "ShelledBall").level == "ShelledBall"


def test_starring_whole_triangle():
    new, move = perform_starring(TRIANGLE, TRIANGLE, 3, "w")
    assert new == C([["a", "b", "w"], ["b", "c", "w"], ["a", "c", "w"]])
    assert len(new.vertices) == 4
    assert move.before == digest(TRIANGLE) and move.after == digest(new)


def test_coface_violation_rejected():
    M = C([["a", "b", "c"], ["a", "b", "d"]])
    D = C([["a", "b", "c"]])
    # the open edge ab is interior to this 1-disk but has cofaces outside it
    edge_disk = C([["a", "b"]])
    assert coface_violation(M, edge_disk, C([["a"], ["b"]])) is not None
    with pytest.raises(RejectedMove):
        perform_starring(M, edge_disk, 8, "w")
    new, _ = perform_starring(M, D, 8, "w")
    assert ("a", "b", "d") in new


def test_rejections():
    with pytest.raises(RejectedMove):
        perform_starring(TRIANGLE, TRIANGLE, 2, "w")
    with pytest.raises(RejectedMove):
        perform_starring(TRIANGLE, TRIANGLE, 3, "a")
    with pytest.raises(RejectedMove):
        perform_starring(TRIANGLE, C([["x", "y"]]), 3, "w")


def test_vertex_bookkeeping_and_homology():
    M = band_sphere(5, 2)
    log = replay_theorem3(5, 2)
    K = M
    for mv in log.moves:
        new, _ = perform_starring(K, mv.disk, 8, mv.apex)
        assert len(new.vertices) == (len(K.vertices) - len(mv.disk.vertices)
                                     + len(mv.boundary.vertices) + 1)
        assert reduced_homology(new) == reduced_homology(K)
        K = new


def test_theorem3_examples():
    log = replay_theorem3(4, 3)
    assert all(len(mv.disk.vertices) <= 8 for mv in log.moves)
    K = log.start
    for mv in log.moves:
        K, _ = perform_starring(K, mv.disk, 8, mv.apex)
    assert len(K.vertices) == 5
    first_round = log.start
    for mv in log.moves[:4]:
        first_round, _ = perform_starring(first_round, mv.disk, 8, mv.apex)
    assert isomorphic(first_round, band_sphere(4, 2)) is not None
    assert replay_theorem3(3, 0).moves == []


def test_theorem3_round_one_disk_sizes():
    # the m = 1 round on n = 4 uses 8-, 7- and 6-vertex disks
    log = replay_theorem3(4, 1)
    sizes = [len(mv.disk.vertices) for mv in log.moves if mv.note["round"] == 1]
    assert sizes == [8, 7, 7, 6]


def test_theorem4_examples():
    log = replay_theorem4(2, 0)
    for mv in log.moves:
        nv = len(mv.disk.vertices)
        assert nv < 36
        if mv.note["phase"] == 0:
            assert nv <= 25
        else:
            assert nv <= 6 + 2
    log = replay_theorem4(1, 0)
    assert len(log.start.vertices) == 8
    assert len(doubled_sphere(1, 0).vertices) == 4


def test_verify_and_tamper():
    log = replay_theorem3(4, 2)
    text = log.to_json()
    assert verify_move_log(log) and verify_move_log(text)
    data = json.loads(text)
    data["moves"][0]["r_bound"] = 9
    assert not verify_move_log(json.dumps(data))
    data = json.loads(text)
    data["moves"][1]["after"] = "0" * 64
    assert not verify_move_log(json.dumps(data))
    data = json.loads(text)
    data["final"]["isomorphism"] = {}
    assert not verify_move_log(json.dumps(data))
    assert not verify_move_log("{}")


def test_log_round_trip_and_determinism():
    a = replay_theorem3(5, 1).to_json()
    assert a == replay_theorem3(5, 1).to_json()
    assert MoveLog.from_json(a).to_json() == a
    b = replay_theorem4(1, 1).to_json()
    assert b == replay_theorem4(1, 1).to_json()
    assert verify_move_log(b)
