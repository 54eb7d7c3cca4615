"""JSON file formats: posets, lattices, capacities, profiles, scales.

Rationals travel as strings ("3/10" or "0.3"); floats found in files are
read through their decimal form, so every value survives a parse/serialize
round trip exactly. Duplicate value entries are tolerated only when they
agree.
"""

from __future__ import annotations

from fractions import Fraction

from .bipolar import BipolarCapacity, BipolarProfile
from .birkhoff import BirkhoffForm, DownsetLattice, verify_distributive
from .errors import ContradictoryValue, FileFormatError
from .interpolation import Profile
from .kary import ReferenceScale, build_kary_base, node_to_downset, downset_to_node, grid_shape
from .moebius import GeneralizedCapacity
from .poset import Poset
from .rationals import as_fraction


def fraction_text(value: Fraction) -> str:
    return str(value)


def _require(obj, key: str, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise FileFormatError(f"missing {key!r} in {where}", field=key)
    return obj[key]


def _label_list(value, where: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise FileFormatError(f"{where} must be a list of strings", field=where)
    return value


def _parse_value(raw, where: str) -> Fraction:
    try:
        return as_fraction(raw)
    except (TypeError, ValueError) as exc:
        raise FileFormatError(f"bad value in {where}: {exc}", field=where) from None


# posets and lattices


def parse_poset(obj) -> Poset:
    elements = _label_list(_require(obj, "elements", "poset file"), "elements")
    covers_raw = _require(obj, "covers", "poset file")
    if not isinstance(covers_raw, list):
        raise FileFormatError("covers must be a list of [lower, upper] pairs", field="covers")
    covers = []
    for entry in covers_raw:
        if not isinstance(entry, list) or len(entry) != 2:
            raise FileFormatError(
                f"bad cover entry {entry!r}, expected [lower, upper]", field="covers"
            )
        covers.append((entry[0], entry[1]))
    return Poset(elements, covers)


def poset_payload(p: Poset) -> dict:
    return {
        "elements": list(p.elements),
        "covers": sorted([lower, upper] for lower, upper in p.covers),
    }


def parse_lattice(obj) -> tuple[DownsetLattice, dict | None]:
    """Lattice file: a poset tagged with its role.

    ``join_irreducibles`` (the default) reads the poset as the base of the
    downset form; ``explicit_lattice`` reads it as the full element poset
    and converts through :func:`verify_distributive`. The second return
    value is the element dictionary for explicit inputs, else ``None``.
    """
    role = obj.get("role", "join_irreducibles") if isinstance(obj, dict) else None
    base = parse_poset(obj)
    if role == "join_irreducibles":
        return DownsetLattice(base), None
    if role == "explicit_lattice":
        form: BirkhoffForm = verify_distributive(base)
        return form.lattice, {x: sorted(d) for x, d in form.eta_map.items()}
    raise FileFormatError(f"unknown lattice role {role!r}", field="role")


def lattice_payload(lattice: DownsetLattice) -> dict:
    payload = poset_payload(lattice.base)
    payload["role"] = "join_irreducibles"
    return payload


# capacities and profiles over an explicit lattice


def parse_capacity(obj) -> GeneralizedCapacity:
    lattice, _ = parse_lattice(_require(obj, "lattice", "capacity file"))
    entries = _require(obj, "values", "capacity file")
    if not isinstance(entries, list):
        raise FileFormatError("values must be a list", field="values")
    table: dict[frozenset, Fraction] = {}
    for entry in entries:
        downset = frozenset(_label_list(_require(entry, "downset", "capacity entry"), "downset"))
        value = _parse_value(_require(entry, "value", "capacity entry"), "value")
        if downset in table and table[downset] != value:
            raise ContradictoryValue(
                f"two different values for downset {sorted(downset)!r}",
                downset=sorted(downset),
            )
        table[downset] = value
    return GeneralizedCapacity(lattice, table)


def capacity_payload(capacity: GeneralizedCapacity) -> dict:
    return {
        "lattice": lattice_payload(capacity.lattice),
        "values": [
            {"downset": sorted(d), "value": fraction_text(v)}
            for d, v in capacity.values.items()
        ],
    }


def parse_profile(obj, base: Poset) -> Profile:
    values = _require(obj, "values", "profile file")
    if not isinstance(values, dict):
        raise FileFormatError("values must be a label-to-number object", field="values")
    return Profile(base, {label: _parse_value(raw, label) for label, raw in values.items()})


def profile_payload(profile: Profile) -> dict:
    return {"values": {label: fraction_text(v) for label, v in profile.values.items()}}


def parse_bipolar_profile(obj, base: Poset) -> BipolarProfile:
    values = _require(obj, "values", "profile file")
    if not isinstance(values, dict):
        raise FileFormatError("values must be a label-to-number object", field="values")
    return BipolarProfile(
        base, {label: _parse_value(raw, label) for label, raw in values.items()}
    )


def bipolar_profile_payload(profile: BipolarProfile) -> dict:
    return {"values": {label: fraction_text(v) for label, v in profile.values.items()}}


def parse_bipolar_capacity(obj) -> BipolarCapacity:
    lattice, _ = parse_lattice(_require(obj, "lattice", "bipolar capacity file"))
    entries = _require(obj, "values", "bipolar capacity file")
    if not isinstance(entries, list):
        raise FileFormatError("values must be a list", field="values")
    table: dict[tuple, Fraction] = {}
    for entry in entries:
        pos = frozenset(_label_list(_require(entry, "pos", "bipolar entry"), "pos"))
        neg = frozenset(_label_list(_require(entry, "neg", "bipolar entry"), "neg"))
        value = _parse_value(_require(entry, "value", "bipolar entry"), "value")
        key = (pos, neg)
        if key in table and table[key] != value:
            raise ContradictoryValue(
                f"two different values for ({sorted(pos)!r}, {sorted(neg)!r})",
                pos=sorted(pos),
                neg=sorted(neg),
            )
        table[key] = value
    return BipolarCapacity(lattice, table)


def bipolar_capacity_payload(capacity: BipolarCapacity) -> dict:
    return {
        "lattice": lattice_payload(capacity.lattice),
        "values": [
            {"pos": sorted(pair.pos), "neg": sorted(pair.neg), "value": fraction_text(v)}
            for pair, v in capacity.values.items()
        ],
    }


# grid (chain-product) capacities keyed by grid points


def _grid_header(obj, where: str) -> tuple[int, int]:
    k = _require(obj, "k", where)
    n = _require(obj, "n", where)
    if not isinstance(k, int) or not isinstance(n, int):
        raise FileFormatError(f"k and n must be integers in {where}", field="k")
    return k, n


def _node(entry, key: str, k: int, n: int) -> frozenset:
    node = _require(entry, key, "grid entry")
    if not isinstance(node, list) or len(node) != n or not all(isinstance(x, int) for x in node):
        raise FileFormatError(
            f"{key} must be a list of {n} integers", field=key
        )
    return node_to_downset(node, k)


def parse_kary_capacity(obj) -> tuple[int, int, GeneralizedCapacity]:
    k, n = _grid_header(obj, "grid capacity file")
    entries = _require(obj, "values", "grid capacity file")
    table: dict[frozenset, Fraction] = {}
    for entry in entries:
        downset = _node(entry, "node", k, n)
        value = _parse_value(_require(entry, "value", "grid entry"), "value")
        if downset in table and table[downset] != value:
            raise ContradictoryValue(f"two different values for node {entry['node']!r}")
        table[downset] = value
    return k, n, GeneralizedCapacity(DownsetLattice(build_kary_base(k, n)), table)


def kary_capacity_payload(capacity: GeneralizedCapacity) -> dict:
    k, n = grid_shape(capacity.lattice.base)
    return {
        "k": k,
        "n": n,
        "values": [
            {"node": list(downset_to_node(d, n)), "value": fraction_text(v)}
            for d, v in capacity.values.items()
        ],
    }


def parse_bipolar_kary_capacity(obj) -> tuple[int, int, BipolarCapacity]:
    k, n = _grid_header(obj, "grid bipolar capacity file")
    entries = _require(obj, "values", "grid bipolar capacity file")
    table: dict[tuple, Fraction] = {}
    for entry in entries:
        pos = _node(entry, "pos", k, n)
        neg = _node(entry, "neg", k, n)
        value = _parse_value(_require(entry, "value", "grid entry"), "value")
        key = (pos, neg)
        if key in table and table[key] != value:
            raise ContradictoryValue(
                f"two different values for node pair ({entry['pos']!r}, {entry['neg']!r})"
            )
        table[key] = value
    return k, n, BipolarCapacity(build_kary_base(k, n), table)


def bipolar_kary_capacity_payload(capacity: BipolarCapacity) -> dict:
    k, n = grid_shape(capacity.base)
    return {
        "k": k,
        "n": n,
        "values": [
            {
                "pos": list(downset_to_node(pair.pos, n)),
                "neg": list(downset_to_node(pair.neg, n)),
                "value": fraction_text(v),
            }
            for pair, v in capacity.values.items()
        ],
    }


def parse_scale(obj, symmetric: bool = False) -> ReferenceScale:
    levels = _require(obj, "levels", "scale file")
    if not isinstance(levels, list):
        raise FileFormatError("levels must be a list", field="levels")
    return ReferenceScale(
        tuple(_parse_value(raw, "levels") for raw in levels), symmetric=symmetric
    )


def scale_payload(scale: ReferenceScale) -> dict:
    return {"levels": [fraction_text(v) for v in scale.levels]}
