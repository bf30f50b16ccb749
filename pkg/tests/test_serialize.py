import pytest

from zhatn.arith import PicElement, make_context
from zhatn.bundles import BundleRep
from zhatn.errors import MalformedInput, NotInBall, NotInvertible, NotInZ1N
from zhatn.monad import ANMatrix
from zhatn.projective import decompose_free, validate_idempotent, verify_certificate
from zhatn.serialize import (
    bundle_to_doc,
    certificate_from_doc,
    certificate_to_doc,
    dumps,
    loads,
    matrix_to_doc,
    parse_matrix,
    pic_from_doc,
    pic_to_doc,
)

TWO, SIX = make_context(2), make_context(6)
HALF = [["1/2", "1/2"], ["1/2", "1/2"]]


def test_parse_matrix_examples():
    A = parse_matrix(HALF, TWO)
    assert isinstance(A, ANMatrix) and A.shape == (2, 2)
    with pytest.raises(NotInZ1N) as info:
        parse_matrix([["1/3"]], TWO)
    assert "row 0, column 0" in str(info.value)
    B = parse_matrix([["2", "0"], ["1", "4"]], TWO, kind="bundle")
    assert isinstance(B, BundleRep) and B.r == 2


def test_parse_matrix_accepts_wrapped_and_integer_entries():
    A = parse_matrix({"N": 2, "matrix": [[1, 0], [0, 1]]}, TWO)
    assert matrix_to_doc(A.entries) == [["1", "0"], ["0", "1"]]
    with pytest.raises(MalformedInput):
        parse_matrix({"N": 3, "matrix": [[1]]}, TWO)


def test_parse_matrix_errors_name_location():
    with pytest.raises(NotInBall) as info:
        parse_matrix([["1", "1/2"], ["0", "1"]], TWO)
    assert info.value.column == 1
    with pytest.raises(MalformedInput) as info:
        parse_matrix([["1", "x"]], TWO)
    assert "column 1" in str(info.value)
    with pytest.raises(MalformedInput):
        parse_matrix([["1"], ["1", "0"]], TWO)
    with pytest.raises(NotInvertible):
        parse_matrix([["1", "0"], ["0", "3"]], TWO, kind="bundle")


def test_loads_rejects_floats():
    with pytest.raises(MalformedInput):
        loads("[[0.5]]")
    with pytest.raises(MalformedInput):
        loads("[NaN]")
    with pytest.raises(MalformedInput):
        loads("[[")


def test_dumps_is_compact():
    assert dumps({"a": [1, "1/2"]}) == '{"a":[1,"1/2"]}'


def test_certificate_round_trip():
    P = validate_idempotent(parse_matrix(HALF, TWO))
    cert = decompose_free(P)
    doc = certificate_to_doc(cert, TWO)
    assert set(doc) == {"N", "rank", "J", "Q", "digest"}
    back = certificate_from_doc(loads(dumps(doc)), TWO)
    assert back == cert
    assert verify_certificate(P, back)


def test_certificate_digest_detects_tampering():
    cert = decompose_free(validate_idempotent(parse_matrix(HALF, TWO)))
    doc = certificate_to_doc(cert, TWO)
    doc["Q"] = [["1", "0"]]
    with pytest.raises(MalformedInput):
        certificate_from_doc(doc, TWO)


def test_rank_zero_certificate():
    cert = decompose_free(validate_idempotent(parse_matrix([["0", "0"], ["0", "0"]], TWO)))
    back = certificate_from_doc(certificate_to_doc(cert, TWO), TWO)
    assert back.rank == 0 and back.J.shape == (2, 0) and back.Q.shape == (0, 2)


def test_pic_docs():
    p = PicElement((3, -1), SIX)
    assert pic_from_doc(pic_to_doc(p), SIX) == p
    for bad in [[1], [1, "2"], "x", [True, 1]]:
        with pytest.raises(MalformedInput):
            pic_from_doc(bad, SIX)


def test_bundle_doc():
    B = parse_matrix([["2", "0"], ["1", "4"]], TWO, kind="bundle")
    assert bundle_to_doc(B) == {"N": 2, "rank": 2, "matrix": [["2", "0"], ["1", "4"]]}
