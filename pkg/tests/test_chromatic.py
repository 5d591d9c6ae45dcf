import itertools

import pytest

from localgen.chromatic import (
    ChromaticComplex, ChromaticError, chromatic_decides, chromatic_join, find_chromatic_map, input_complex,
    is_join_over, join_structure_checks, map_to_procedure, output_complex, project_colors, to_dot,
)
from localgen.complexes import all_complexes, complete_graph, from_maximal, full_complex
from localgen.decide import decide_generates
from localgen.language import card_le, constants, ev, make_language, unique
from localgen.procedure import verify_generates

K3 = complete_graph(3).to_complex()
G = from_maximal(3, [[0, 1], [1, 2]])  # K_3 minus one edge


def sizes(C):
    return len(C.vertices), len(C.simplices)


def test_output_complexes():
    assert sizes(output_complex(card_le(3, 1))) == (6, 4)
    assert sizes(output_complex(unique(3))) == (6, 3)
    C = output_complex(constants(3))
    assert sizes(C) == (6, 2) and len(C.components()) == 2


def test_input_complexes():
    assert sizes(input_complex(K3, 2)) == (12, 8)
    full = input_complex(full_complex(3), 2)
    assert sizes(full) == (6, 2) and len(full.components()) == 2
    assert input_complex(G, 2).is_connected()


def test_labels_render_blanks():
    C = input_complex(G, 2)
    assert any("⊥" in s for s in C.display)


def test_table_entries():
    src = input_complex(K3, 2)
    assert find_chromatic_map(src, output_complex(card_le(3, 1))) is not None
    assert find_chromatic_map(src, output_complex(unique(3))) is None
    assert find_chromatic_map(input_complex(G, 2), output_complex(card_le(3, 1))) is None


def test_verdicts_and_witness():
    v = chromatic_decides(card_le(3, 1), K3)
    assert v.generates and v.input_size == 2
    P = map_to_procedure(K3, 2, input_complex(K3, 2), output_complex(card_le(3, 1)), v.mapping, card_le(3, 1))
    assert verify_generates(P, card_le(3, 1), K3)
    assert not chromatic_decides(unique(3), K3).generates
    assert chromatic_decides(constants(2), full_complex(2)).generates


def test_agrees_with_engine_on_small_cases():
    words = list(itertools.product((0, 1), repeat=3))
    for L in [make_language(3, 2, ws) for ws in itertools.combinations(words, 2)]:
        for K in all_complexes(3):
            assert chromatic_decides(L, K).generates == decide_generates(L, K).generates


def test_joins():
    prod = make_language(4, 2, [a + b for a in ev(2).words for b in ev(2).words])
    C = output_complex(prod)
    assert is_join_over(C, [0, 1])
    J = chromatic_join(output_complex(ev(2)), output_complex(ev(2)), [0, 1], [2, 3])
    assert J.label_rows() == C.label_rows()
    K = from_maximal(4, [[0, 1], [2, 3]])
    assert join_structure_checks(K)["agree"]
    assert [0, 1] in [p[0] for p in join_structure_checks(K)["join_partitions"]]
    report = join_structure_checks(ev(3))
    assert report["agree"] and report["join_partitions"] == []
    assert project_colors(C, [0, 1]).label_rows() == output_complex(ev(2)).label_rows()


def test_improper_coloring_rejected():
    with pytest.raises(ChromaticError):
        ChromaticComplex(2, ((0, 0), (0, 1)), ((0, 1),))


def test_dot_export():
    text = to_dot(input_complex(G, 2))
    assert text.startswith("graph") and "--" in text
