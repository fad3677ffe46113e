/** The shipped example queries, mirrored from the backend recipe library
 * (the UI talks only to the three service endpoints, so the texts are baked
 * in as static data). */

export interface Recipe {
  name: string;
  title: string;
  request: string;
  cluster: string | null;
}

export const RECIPES: Recipe[] = [
  {
    name: "say-without-sayer",
    title: "say-01 with no realized Sayer",
    request:
      'pattern { N [concept = "say-01"] }\n' +
      "without { N -[ARG0]-> A0 }\n" +
      "without { A0 -[ARG0-of]-> N }\n",
    cluster: null,
  },
  {
    name: "make-concepts",
    title: "distribution of make-* concepts",
    request: 'pattern { N [concept = re"make-.*"]; }\n',
    cluster: "N.concept",
  },
  {
    name: "coordination-op1",
    title: "'and' with/without an op1 edge",
    request: 'pattern { N [concept = "and"] }\n',
    cluster: "whether { N -[op1]-> X }",
  },
  {
    name: "coordination-op2",
    title: "'and' with/without an op2 edge",
    request: 'pattern { N [concept = "and"] }\n',
    cluster: "whether { N -[op2]-> X }",
  },
  {
    name: "relation-distribution",
    title: "relations between two concept nodes",
    request: "pattern {\n  M [concept]; N [concept];\n  e: M -> N\n}\n",
    cluster: "e.label",
  },
  {
    name: "nested-negation",
    title: "two nested negation boxes",
    request:
      "pattern {\n  B1 -[NEGATION]-> B2;\n  B2 -[NEGATION]-> B3\n}\n",
    cluster: null,
  },
  {
    name: "cyclic",
    title: "cyclic graphs",
    request: "global { is_cyclic }\n",
    cluster: null,
  },
  {
    name: "name-without-wiki",
    title: "name edge without a wiki edge",
    request: "pattern { M -[name]-> N }\nwithout { M -[wiki]-> * }\n",
    cluster: null,
  },
  {
    name: "agent-equals-patient",
    title: "one entity as both Agent and Patient",
    request: "pattern {\n  P -[Agent]-> E;\n  P -[Patient]-> E;\n}\n",
    cluster: null,
  },
];

export function getRecipe(name: string): Recipe {
  const recipe = RECIPES.find((r) => r.name === name);
  if (!recipe) throw new Error(`unknown recipe ${name}`);
  return recipe;
}
