/** Parse and render the DOT subset the service emits.
 *
 * The service writes `digraph semgraph { ... }` with quoted ids, node and
 * edge statements, and attribute lists; that is the whole input space, so a
 * small hand layout beats shipping a full graphviz build to the browser.
 * Rendering throws on anything outside the subset; callers fall back to the
 * interchange text view.
 */

export const HIGHLIGHT_COLOR = "#1f77b4";

export interface DotNode {
  id: string;
  attrs: Record<string, string>;
}

export interface DotEdge {
  source: string;
  target: string;
  attrs: Record<string, string>;
}

export interface DotGraph {
  nodes: DotNode[];
  edges: DotEdge[];
}

type Token = { kind: "id" | "sym"; text: string };

function tokenize(text: string): Token[] {
  const tokens: Token[] = [];
  let i = 0;
  while (i < text.length) {
    const ch = text[i];
    if (/\s/.test(ch)) {
      i += 1;
      continue;
    }
    if (ch === '"') {
      let j = i + 1;
      let out = "";
      while (j < text.length && text[j] !== '"') {
        if (text[j] === "\\" && j + 1 < text.length) {
          const esc = text[j + 1];
          out += esc === "n" ? "\n" : esc;
          j += 2;
          continue;
        }
        out += text[j];
        j += 1;
      }
      if (j >= text.length) throw new Error("unterminated quoted id");
      tokens.push({ kind: "id", text: out });
      i = j + 1;
      continue;
    }
    if (text.startsWith("->", i)) {
      tokens.push({ kind: "sym", text: "->" });
      i += 2;
      continue;
    }
    if ("{}[];,=".includes(ch)) {
      tokens.push({ kind: "sym", text: ch });
      i += 1;
      continue;
    }
    const match = text.slice(i).match(/^[A-Za-z_][A-Za-z0-9_]*/);
    if (match) {
      tokens.push({ kind: "id", text: match[0] });
      i += match[0].length;
      continue;
    }
    throw new Error(`unexpected character ${ch}`);
  }
  return tokens;
}

export function parseDot(text: string): DotGraph {
  const tokens = tokenize(text);
  let pos = 0;
  const peek = () => tokens[pos];
  const next = () => tokens[pos++];
  const expect = (want: string) => {
    const tok = next();
    if (!tok || tok.text !== want || tok.kind !== "sym") {
      throw new Error(`expected ${want}`);
    }
  };
  const takeId = () => {
    const tok = next();
    if (!tok || tok.kind !== "id") throw new Error("expected an identifier");
    return tok.text;
  };

  if (takeId() !== "digraph") throw new Error("not a digraph");
  if (peek()?.kind === "id") next(); // graph name
  expect("{");
  const nodes: DotNode[] = [];
  const edges: DotEdge[] = [];
  while (peek() && peek().text !== "}") {
    const first = takeId();
    const attrs: Record<string, string> = {};
    let edgeTarget: string | null = null;
    if (peek()?.text === "->") {
      next();
      edgeTarget = takeId();
    }
    expect("[");
    while (peek() && peek().text !== "]") {
      const name = takeId();
      expect("=");
      attrs[name] = takeId();
      if (peek()?.text === ",") next();
    }
    expect("]");
    expect(";");
    if (edgeTarget === null) {
      nodes.push({ id: first, attrs });
    } else {
      edges.push({ source: first, target: edgeTarget, attrs });
    }
  }
  expect("}");
  if (pos !== tokens.length) throw new Error("trailing tokens");
  return { nodes, edges };
}

/** Longest-path layering; cycle edges are ignored for level assignment. */
function assignLevels(graph: DotGraph): Map<string, number> {
  const levels = new Map<string, number>();
  const visiting = new Set<string>();
  const out = new Map<string, string[]>();
  for (const node of graph.nodes) out.set(node.id, []);
  for (const edge of graph.edges) {
    if (edge.source !== edge.target) out.get(edge.source)?.push(edge.target);
  }
  const indegree = new Map<string, number>();
  for (const node of graph.nodes) indegree.set(node.id, 0);
  for (const edge of graph.edges) {
    if (edge.source !== edge.target) {
      indegree.set(edge.target, (indegree.get(edge.target) ?? 0) + 1);
    }
  }
  const visit = (id: string, depth: number) => {
    if (visiting.has(id)) return; // cycle: keep the first level
    if ((levels.get(id) ?? -1) >= depth) return;
    levels.set(id, depth);
    visiting.add(id);
    for (const succ of out.get(id) ?? []) visit(succ, depth + 1);
    visiting.delete(id);
  };
  for (const node of graph.nodes) {
    if ((indegree.get(node.id) ?? 0) === 0) visit(node.id, 0);
  }
  for (const node of graph.nodes) {
    if (!levels.has(node.id)) visit(node.id, 0);
  }
  return levels;
}

const SVG_NS = "http://www.w3.org/2000/svg";
const LEVEL_HEIGHT = 90;
const SLOT_WIDTH = 150;
const MARGIN = 40;

interface Placed {
  node: DotNode;
  x: number;
  y: number;
}

function place(graph: DotGraph): Map<string, Placed> {
  const levels = assignLevels(graph);
  const byLevel = new Map<number, DotNode[]>();
  for (const node of graph.nodes) {
    const level = levels.get(node.id) ?? 0;
    if (!byLevel.has(level)) byLevel.set(level, []);
    byLevel.get(level)!.push(node);
  }
  const placed = new Map<string, Placed>();
  for (const [level, nodes] of byLevel) {
    nodes.forEach((node, slot) => {
      placed.set(node.id, {
        node,
        x: MARGIN + slot * SLOT_WIDTH + (level % 2) * (SLOT_WIDTH / 2),
        y: MARGIN + level * LEVEL_HEIGHT,
      });
    });
  }
  return placed;
}

function el(
  doc: Document,
  name: string,
  attrs: Record<string, string>,
  text?: string,
): SVGElement {
  const node = doc.createElementNS(SVG_NS, name) as SVGElement;
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, value);
  }
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderDot(text: string, doc: Document = document): SVGSVGElement {
  const graph = parseDot(text);
  const placed = place(graph);
  let width = 2 * MARGIN;
  let height = 2 * MARGIN;
  for (const { x, y } of placed.values()) {
    width = Math.max(width, x + SLOT_WIDTH);
    height = Math.max(height, y + LEVEL_HEIGHT);
  }
  const svg = el(doc, "svg", {
    xmlns: SVG_NS,
    viewBox: `0 0 ${width} ${height}`,
    width: String(width),
    height: String(height),
    class: "dot-graph",
  }) as SVGSVGElement;

  for (const edge of graph.edges) {
    const from = placed.get(edge.source);
    const to = placed.get(edge.target);
    if (!from || !to) throw new Error(`edge endpoint missing: ${edge.source}`);
    const color = edge.attrs.color ?? "#555";
    const group = el(doc, "g", { class: "dot-edge" });
    const dashed = edge.attrs.style === "dotted" ? "4 3" : "";
    if (edge.source === edge.target) {
      group.appendChild(
        el(doc, "circle", {
          cx: String(from.x + 34),
          cy: String(from.y - 14),
          r: "14",
          fill: "none",
          stroke: color,
          "stroke-dasharray": dashed,
        }),
      );
    } else {
      group.appendChild(
        el(doc, "line", {
          x1: String(from.x),
          y1: String(from.y),
          x2: String(to.x),
          y2: String(to.y),
          stroke: color,
          "stroke-width": edge.attrs.penwidth ?? "1",
          "stroke-dasharray": dashed,
        }),
      );
    }
    group.appendChild(
      el(
        doc,
        "text",
        {
          x: String((from.x + to.x) / 2 + (edge.source === edge.target ? 52 : 6)),
          y: String((from.y + to.y) / 2 - 4),
          fill: edge.attrs.fontcolor ?? "#555",
          "font-size": "11",
          class: "dot-edge-label",
        },
        edge.attrs.label ?? "",
      ),
    );
    svg.appendChild(group);
  }

  for (const { node, x, y } of placed.values()) {
    const label = node.attrs.label ?? node.id;
    const highlighted = Boolean(node.attrs.penwidth);
    const stroke = node.attrs.color ?? "#333";
    const group = el(doc, "g", {
      class: highlighted ? "dot-node highlight" : "dot-node",
      "data-node-id": node.id,
    });
    const lines = label.split("\n");
    const boxWidth = Math.max(60, 8 * Math.max(...lines.map((l) => l.length)));
    if (node.attrs.shape === "box") {
      group.appendChild(
        el(doc, "rect", {
          x: String(x - boxWidth / 2),
          y: String(y - 16),
          width: String(boxWidth),
          height: String(14 + lines.length * 14),
          fill: "#fff",
          stroke,
          "stroke-width": node.attrs.penwidth ?? "1",
        }),
      );
    } else {
      group.appendChild(
        el(doc, "ellipse", {
          cx: String(x),
          cy: String(y),
          rx: String(boxWidth / 2 + 6),
          ry: String(10 + lines.length * 8),
          fill: "#fff",
          stroke,
          "stroke-width": node.attrs.penwidth ?? "1",
        }),
      );
    }
    lines.forEach((line, i) => {
      group.appendChild(
        el(
          doc,
          "text",
          {
            x: String(x),
            y: String(y + 4 + i * 13 - (lines.length - 1) * 6),
            "text-anchor": "middle",
            fill: node.attrs.fontcolor ?? "#111",
            "font-size": "12",
          },
          line,
        ),
      );
    });
    svg.appendChild(group);
  }
  return svg;
}
