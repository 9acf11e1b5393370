import pytest

import qfalg


def test_forms_round_trip_and_decide():
    q = qfalg.QuadraticForm("diag(1,1,-2)@QQ")
    assert q.dim == 3
    assert qfalg.QuadraticForm(str(q)) == q
    assert qfalg.isotropy(q) == "isotropic"
    assert qfalg.isotropy(qfalg.QuadraticForm("diag(1,1,1)@QQ")) == "anisotropic"
    assert qfalg.witt_index(qfalg.QuadraticForm("diag(1,-1,2,3)@QQ")) == 1
    assert qfalg.is_hyperbolic(qfalg.QuadraticForm("hyp(2)@GF(4)"))
    assert q.eval(["1", "1", "1"]) == "0"


def test_algebras_and_hermitian_forms():
    a = qfalg.Algebra("quat(a=-1,b=2)@QQ")
    assert a.dim == 4
    assert qfalg.is_division(a)
    assert qfalg.is_split(qfalg.Algebra("quat(a=1,b=1)@GF(3)"))
    assert qfalg.pfister_similarity(qfalg.norm_form(a)) == "yes"
    h1 = qfalg.HermitianForm("diag(1,1)@etale(a=-1)@QQ")
    h3 = qfalg.HermitianForm("diag(1,3)@etale(a=-1)@QQ")
    h2 = qfalg.HermitianForm("diag(1,2)@etale(a=-1)@QQ")
    assert qfalg.trace_form(h1).dim == 4
    assert qfalg.isometric_h(h1, h3)
    assert not qfalg.isometric_h(h1, h2)


def test_errors_map_to_python_exceptions():
    with pytest.raises(qfalg.SyntaxError) as info:
        qfalg.QuadraticForm("diag(1,\n x)@QQ")
    assert "line 2" in str(info.value)
    with pytest.raises(qfalg.Error):
        qfalg.QuadraticForm("diag(1,0)@QQ")
    assert issubclass(qfalg.SyntaxError, ValueError)


def test_cli_documents():
    code, doc = qfalg.run(["inv", "battery", "symplectic", "--quat", "a=-1,b=2@QQ", "--phi", "pfister_b(2,3)", "--verify"])
    assert code == 0
    assert doc["result"]["verdict"] == "AllEquivalent"
    assert doc["verify"]["agreed"] is True
    code, doc = qfalg.run(["qform", "witt", "diag(1,"])
    assert code == 2
    assert doc["error"]["kind"] == "SyntaxError"
