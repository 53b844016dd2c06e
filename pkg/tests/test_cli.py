import json
from pathlib import Path
from typing import List

import pytest

from app import build_parser, run_command
from schemas.documents import CategoryDocument, GroupoidDocument
from services.certifiers import CERTIFIER_REGISTRY
from services.errors import DocumentError
from state import export_document, load_and_validate, load_workspace, parse_documents


FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"
BZ2 = str(FIXTURES / "bz2_family.json")
COVERS = str(FIXTURES / "decomposition_cover.json")
POSET = str(FIXTURES / "poset_no_pullback.json")
RETRACTION = str(FIXTURES / "retraction.json")


def _category(composition: List[List[str]], name: str = "arrow") -> dict:
    return {
        "kind": "category",
        "name": name,
        "objects": ["0", "1"],
        "morphisms": [
            {"id": "id0", "source": "0", "target": "0"},
            {"id": "id1", "source": "1", "target": "1"},
            {"id": "f", "source": "0", "target": "1"},
        ],
        "identities": {"0": "id0", "1": "id1"},
        "composition": composition,
    }


GOOD_COMPOSITION = [["id0", "id0", "id0"], ["id1", "id1", "id1"], ["id0", "f", "f"], ["f", "id1", "f"]]


def _write(tmp_path: Path, payload, name: str = "doc.json") -> str:
    path = tmp_path / name
    path.write_text(payload if isinstance(payload, str) else json.dumps(payload), encoding="utf-8")
    return str(path)


def _run(capsys, argv: List[str]) -> tuple:
    code = run_command(argv)
    return code, json.loads(capsys.readouterr().out)


# ============================================================================
# Dokumente und Workspace
# ============================================================================

def test_fixtures_load_strictly() -> None:
    workspace = load_workspace([BZ2, COVERS, POSET, RETRACTION])
    assert not workspace.invalid()
    assert "bz2_family" in workspace
    assert workspace.entry("BZ2").kind == "groupoid"


def test_unknown_morphism_is_reference_violation(tmp_path: Path) -> None:
    path = _write(tmp_path, _category(GOOD_COMPOSITION + [["f", "ghost", "f"]]))
    workspace = load_and_validate(path, strict=False)
    report = workspace.entry("arrow").report
    assert report.has("unknown_morphism", kind="reference")
    with pytest.raises(DocumentError):
        load_and_validate(path)


@pytest.mark.parametrize("position", ["first", "last"])
def test_conflicting_composition_is_reported_in_any_order(tmp_path: Path, capsys, position: str) -> None:
    clash = [["id0", "f", "id0"]]
    table = clash + GOOD_COMPOSITION if position == "first" else GOOD_COMPOSITION + clash
    path = _write(tmp_path, _category(table))
    code, cert = _run(capsys, ["-w", path, "validate"])
    assert code == 1
    violations = cert["witness"]["violations"]["arrow"]
    assert [v["instance"] for v in violations if v["rule"] == "composition_conflict"] == [["id0", "f"]]


def test_conflicting_tables_validate_alike(tmp_path: Path) -> None:
    clash = [["id0", "f", "id0"]]
    reports = []
    for table in (clash + GOOD_COMPOSITION, GOOD_COMPOSITION + clash):
        path = _write(tmp_path, _category(table))
        reports.append(load_and_validate(path, strict=False).entry("arrow").report)
    assert reports[0] == reports[1]
    assert reports[0].has("composition_conflict", kind="axiom")


def test_conflicting_inverses_are_reported(tmp_path: Path) -> None:
    doc = {
        "kind": "groupoid",
        "name": "swap",
        "objects": ["a", "b"],
        "morphisms": [
            {"id": "ida", "source": "a", "target": "a"},
            {"id": "idb", "source": "b", "target": "b"},
            {"id": "u", "source": "a", "target": "b"},
            {"id": "v", "source": "b", "target": "a"},
        ],
        "identities": {"a": "ida", "b": "idb"},
        "composition": [
            ["ida", "ida", "ida"], ["idb", "idb", "idb"], ["u", "idb", "u"], ["ida", "u", "u"],
            ["v", "ida", "v"], ["idb", "v", "v"], ["u", "v", "ida"], ["v", "u", "idb"],
        ],
        "inverses": [["u", "v"], ["v", "u"], ["ida", "ida"], ["idb", "idb"]],
    }
    assert load_and_validate(_write(tmp_path, doc)).entry("swap").report.ok
    doc["inverses"].append(["u", "u"])
    report = load_and_validate(_write(tmp_path, doc), strict=False).entry("swap").report
    assert report.has("inverse_conflict", kind="axiom")
    with pytest.raises(DocumentError):
        load_and_validate(_write(tmp_path, doc))


def test_duplicate_map_key_is_document_error() -> None:
    raw = '{"kind": "functor", "name": "F", "source": "a", "target": "a", "maps": {"object_map": {"0": "0", "0": "1"}}}'
    with pytest.raises(DocumentError) as excinfo:
        parse_documents(raw, location="f.json")
    assert excinfo.value.location == "f.json:0"


def test_unresolved_reference_is_document_error(tmp_path: Path) -> None:
    doc = {
        "kind": "fam",
        "name": "dangling",
        "shape": "nowhere",
        "target": "arrow",
        "arrow": {"object_map": {}, "morphism_map": {}},
    }
    path = _write(tmp_path, {"schema_version": 1, "documents": [_category(GOOD_COMPOSITION), doc]})
    with pytest.raises(DocumentError) as excinfo:
        load_and_validate(path)
    assert "nowhere" in str(excinfo.value)


def test_wrong_kind_reference_is_document_error(tmp_path: Path) -> None:
    doc = {
        "kind": "fam",
        "name": "wrong",
        "shape": "arrow",
        "target": "arrow",
        "arrow": {"object_map": {}, "morphism_map": {}},
    }
    path = _write(tmp_path, {"schema_version": 1, "documents": [_category(GOOD_COMPOSITION), doc]})
    with pytest.raises(DocumentError):
        load_and_validate(path)


def test_duplicate_names_are_rejected(tmp_path: Path) -> None:
    path = _write(tmp_path, {"schema_version": 1, "documents": [_category(GOOD_COMPOSITION), _category(GOOD_COMPOSITION)]})
    with pytest.raises(DocumentError) as excinfo:
        load_and_validate(path)
    assert "arrow" in str(excinfo.value)


def test_json_error_reports_line_and_column() -> None:
    with pytest.raises(DocumentError) as excinfo:
        parse_documents('{"kind": "category",\n "name": }', location="broken.json")
    assert excinfo.value.location.startswith("broken.json:2:")


def test_schema_error_reports_field_path() -> None:
    raw = json.dumps({"kind": "category", "name": "c", "objects": ["a"], "morphisms": [], "composition": []})
    with pytest.raises(DocumentError) as excinfo:
        parse_documents(raw, location="c.json")
    assert excinfo.value.location.startswith("c.json:")
    assert "identities" in excinfo.value.location


def test_export_is_normalized_and_reloads() -> None:
    workspace = load_and_validate(BZ2)
    entry = workspace.entry("BZ2")
    exported = export_document(entry)
    assert exported["objects"] == ["*"]
    assert [m["id"] for m in exported["morphisms"]] == ["e", "g"]
    reloaded = GroupoidDocument.model_validate(exported).to_kernel(lambda ref, kinds: workspace.get(ref, kinds))
    assert reloaded.same_as(entry.value)
    assert export_document(entry) == exported


def test_category_from_kernel_sorts_composition() -> None:
    workspace = load_and_validate(POSET)
    doc = CategoryDocument.from_kernel(workspace.get("cospan_poset"), name="cospan_poset")
    assert doc.composition == sorted(doc.composition)


# ============================================================================
# Kommandozeile
# ============================================================================

def test_every_verb_is_registered() -> None:
    parser = build_parser()
    help_text = parser.format_help()
    assert len(CERTIFIER_REGISTRY) == 16
    assert all(verb in help_text for verb in CERTIFIER_REGISTRY)


def test_pi1_of_bz2_family(capsys) -> None:
    code, cert = _run(capsys, ["-w", BZ2, "pi1", "bz2_family", "--basepoint", "*"])
    assert code == 0
    assert cert["verdict"] == "verified"
    assert cert["result"]["order"] == 2
    assert cert["anchor"]


def test_cover_check_verdicts(capsys) -> None:
    code, cert = _run(capsys, ["-w", COVERS, "cover-check", "components"])
    assert code == 0
    code, cert = _run(capsys, ["-w", COVERS, "cover-check", "only_a"])
    assert code == 1
    assert cert["verdict"] == "refuted"
    assert cert["witness"]["unhit_block"]


def test_missing_pullback_is_misuse(capsys) -> None:
    code, cert = _run(capsys, ["-w", POSET, "limit", "--kind", "pullback", "sigma_f", "sigma_g"])
    assert code == 3
    assert cert["verdict"] == "misuse"
    assert "Kein Limes" in cert["message"]


def test_cech_of_point_inclusion(capsys) -> None:
    code, cert = _run(capsys, ["-w", BZ2, "cech", "point_inclusion", "--levels", "2"])
    assert code == 0


def test_locus_verbs(capsys) -> None:
    code, cert = _run(capsys, ["-w", RETRACTION, "locus-f", "two_fibers"])
    assert code == 0
    assert cert["result"]["components"] == 2
    code, _ = _run(capsys, ["-w", RETRACTION, "locus-roundtrip", "--seed", "3", "two_fibers", "pair"])
    assert code == 0


def test_validate_reports_broken_documents(tmp_path: Path, capsys) -> None:
    path = _write(tmp_path, _category(GOOD_COMPOSITION[:-1]))
    code, cert = _run(capsys, ["-w", path, "validate"])
    assert code == 1
    assert "closure" in {v["rule"] for v in cert["witness"]["violations"]["arrow"]}


def test_strict_loading_turns_violation_into_misuse(tmp_path: Path, capsys) -> None:
    path = _write(tmp_path, _category(GOOD_COMPOSITION[:-1]))
    code, cert = _run(capsys, ["-w", path, "pi0", "arrow"])
    assert code == 3
    assert cert["witness"]["location"] == path


def test_unknown_name_is_misuse(capsys) -> None:
    code, cert = _run(capsys, ["-w", BZ2, "pi0", "nothing"])
    assert code == 3


def test_budget_exhaustion_is_indeterminate(capsys) -> None:
    code, cert = _run(capsys, ["--budget", "1", "-w", COVERS, "extensivity", "X_a", "X_b"])
    assert code == 2
    assert cert["verdict"] == "indeterminate"
    assert cert["budget"]["enumeration"] == 1


def test_randomized_verb_requires_seed() -> None:
    with pytest.raises(SystemExit) as excinfo:
        run_command(["-w", RETRACTION, "locus-roundtrip"])
    assert excinfo.value.code == 3


def test_seed_is_recorded(capsys) -> None:
    code, cert = _run(capsys, ["-w", RETRACTION, "locus-roundtrip", "--seed", "11", "pair"])
    assert code == 0
    assert cert["seed"] == 11


def test_out_writes_certificate_file(tmp_path: Path, capsys) -> None:
    out = tmp_path / "cert.json"
    code = run_command(["-w", BZ2, "--out", str(out), "pi0", "bz2_family"])
    assert code == 0
    assert capsys.readouterr().out == ""
    assert json.loads(out.read_text(encoding="utf-8"))["verb"] == "pi0"
