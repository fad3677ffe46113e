"""Named example queries shipped with the tool.

These cover the documented linguistic observations (argument realization,
concept distributions, box configurations, cyclicity) and the error-mining
packs used by ``semgraph lint``.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Recipe:
    name: str
    title: str
    request: str
    cluster: str | None = None
    formats: tuple[str, ...] = ("penman", "sbn", "interchange")
    description: str = ""


RECIPES: tuple[Recipe, ...] = (
    Recipe(
        name="say-without-sayer",
        title="say-01 with no realized Sayer",
        request=('pattern { N [concept = "say-01"] }\n'
                 "without { N -[ARG0]-> A0 }\n"
                 "without { A0 -[ARG0-of]-> N }\n"),
        formats=("penman",),
        description=("Occurrences of the predicate say-01 whose ARG0 is "
                     "realized neither by an outgoing ARG0 edge nor by an "
                     "incoming ARG0-of edge."),
    ),
    Recipe(
        name="make-concepts",
        title="distribution of make-* concepts",
        request='pattern { N [concept = re"make-.*"]; }\n',
        cluster="N.concept",
        formats=("penman",),
        description="Concept nodes matching make-*, clustered by concept.",
    ),
    Recipe(
        name="coordination-op1",
        title="'and' with/without an op1 edge",
        request='pattern { N [concept = "and"] }\n',
        cluster="whether { N -[op1]-> X }",
        formats=("penman",),
        description="Partition coordination nodes by presence of op1.",
    ),
    Recipe(
        name="coordination-op2",
        title="'and' with/without an op2 edge",
        request='pattern { N [concept = "and"] }\n',
        cluster="whether { N -[op2]-> X }",
        formats=("penman",),
        description="Partition coordination nodes by presence of op2.",
    ),
    Recipe(
        name="relation-distribution",
        title="relations between two concept nodes",
        request=("pattern {\n"
                 "  M [concept]; N [concept];\n"
                 "  e: M -> N\n"
                 "}\n"),
        cluster="e.label",
        description=("Every edge between two concept nodes, clustered by "
                     "its label; the top rows give the most frequent "
                     "semantic relations."),
    ),
    Recipe(
        name="nested-negation",
        title="two nested negation boxes",
        request=("pattern {\n"
                 "  B1 -[NEGATION]-> B2;\n"
                 "  B2 -[NEGATION]-> B3\n"
                 "}\n"),
        formats=("sbn",),
        description=("Chained NEGATION boxes; legitimate for universal "
                     "quantification, suspicious elsewhere."),
    ),
    Recipe(
        name="cyclic",
        title="cyclic graphs",
        request="global { is_cyclic }\n",
        description="Whole graphs containing a directed cycle.",
    ),
    Recipe(
        name="name-without-wiki",
        title="name edge without a wiki edge",
        request=("pattern { M -[name]-> N }\n"
                 "without { M -[wiki]-> * }\n"),
        formats=("penman",),
        description=("Named entities lacking the wiki edge the AMR "
                     "guidelines require."),
    ),
    Recipe(
        name="agent-equals-patient",
        title="one entity as both Agent and Patient",
        request=("pattern {\n"
                 "  P -[Agent]-> E;\n"
                 "  P -[Patient]-> E;\n"
                 "}\n"),
        formats=("sbn",),
        description=("The same node fills Agent and Patient of one "
                     "predicate; legitimate for reflexives, otherwise an "
                     "annotation error."),
    ),
)

_BY_NAME = {r.name: r for r in RECIPES}

#: Error-mining packs: should-be-empty queries per annotation framework.
LINT_PACKS: dict[str, tuple[str, ...]] = {
    "amr": ("name-without-wiki",),
    "pmb": ("agent-equals-patient", "nested-negation"),
}


def get_recipe(name: str) -> Recipe:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise KeyError(f"unknown recipe {name!r}") from None


def pack_recipes(pack: str) -> tuple[Recipe, ...]:
    try:
        names = LINT_PACKS[pack]
    except KeyError:
        raise KeyError(f"unknown lint pack {pack!r}; "
                       f"know {sorted(LINT_PACKS)}") from None
    return tuple(_BY_NAME[n] for n in names)
