/** The interactive workbench: pick a corpus, write or insert a query, run
 * it, browse clusters and highlighted occurrence graphs, refine, repeat.
 *
 * All counts come from the service's `total`; the UI never matches
 * anything itself and renders only service-provided DOT/interchange
 * payloads.
 */

import {
  ApiClient,
  QuerySyntaxFailure,
  SearchItem,
  SearchResponse,
  ServiceFailure,
  ServiceUnreachable,
} from "./api.js";
import { renderDot } from "./dot.js";
import { QueryHistory } from "./history.js";
import { RECIPES } from "./recipes.js";

const PAGE_SIZE = 10;

function h<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  className: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export class Workbench {
  private doc: Document;
  private corpusSelect: HTMLSelectElement;
  private recipeSelect: HTMLSelectElement;
  private historySelect: HTMLSelectElement;
  private editor: HTMLTextAreaElement;
  private clusterInput: HTMLInputElement;
  private runButton: HTMLButtonElement;
  private banner: HTMLDivElement;
  private errorBox: HTMLPreElement;
  private results: HTMLDivElement;
  private status: HTMLDivElement;

  private history: QueryHistory;
  private inflight: AbortController | null = null;
  private offset = 0;
  private lastRun: { corpus: string; request: string; cluster: string } | null =
    null;

  constructor(
    private root: HTMLElement,
    private api: ApiClient,
    storage: Pick<Storage, "getItem" | "setItem"> | null = null,
  ) {
    this.doc = root.ownerDocument;
    this.history = new QueryHistory(
      storage ?? this.doc.defaultView?.localStorage ?? memoryStorage(),
    );
    const doc = this.doc;

    this.banner = h(doc, "div", "banner hidden");
    const controls = h(doc, "div", "controls");
    this.corpusSelect = h(doc, "select", "corpus-select");
    this.recipeSelect = h(doc, "select", "recipe-select");
    const placeholder = h(doc, "option", "", "insert an example query…");
    placeholder.value = "";
    this.recipeSelect.appendChild(placeholder);
    for (const recipe of RECIPES) {
      const option = h(doc, "option", "", recipe.title);
      option.value = recipe.name;
      this.recipeSelect.appendChild(option);
    }
    this.historySelect = h(doc, "select", "history-select");
    controls.append(this.corpusSelect, this.recipeSelect, this.historySelect);

    this.editor = h(doc, "textarea", "editor");
    this.editor.rows = 6;
    this.clusterInput = h(doc, "input", "cluster-input");
    this.clusterInput.placeholder =
      "clustering key (N.concept, e.label, whether { … })";
    this.runButton = h(doc, "button", "run", "Run");
    this.errorBox = h(doc, "pre", "error hidden");
    this.status = h(doc, "div", "status");
    this.results = h(doc, "div", "results");

    root.append(
      this.banner,
      controls,
      this.editor,
      this.clusterInput,
      this.runButton,
      this.errorBox,
      this.status,
      this.results,
    );

    this.recipeSelect.addEventListener("change", () => this.insertRecipe());
    this.historySelect.addEventListener("change", () => {
      if (this.historySelect.value) this.editor.value = this.historySelect.value;
    });
    this.runButton.addEventListener("click", () => {
      void this.run(0);
    });
    // switching corpus must preserve the editor content: nothing to do,
    // we simply never touch the textarea from the corpus selector.
    this.refreshHistoryOptions();
  }

  async init(): Promise<void> {
    try {
      const corpora = await this.api.listCorpora();
      this.corpusSelect.replaceChildren();
      for (const corpus of corpora) {
        const option = h(this.doc, "option", "", corpusLabel(corpus));
        option.value = corpus.id;
        this.corpusSelect.appendChild(option);
      }
      this.banner.classList.add("hidden");
    } catch (err) {
      if (err instanceof ServiceUnreachable) {
        this.banner.textContent =
          "service unreachable — start it with: semgraph serve";
        this.banner.classList.remove("hidden");
        return;
      }
      throw err;
    }
  }

  insertRecipe(): void {
    const recipe = RECIPES.find((r) => r.name === this.recipeSelect.value);
    if (!recipe) return;
    this.editor.value = recipe.request;
    this.clusterInput.value = recipe.cluster ?? "";
    this.recipeSelect.value = "";
  }

  private refreshHistoryOptions(): void {
    this.historySelect.replaceChildren();
    const placeholder = h(this.doc, "option", "", "history…");
    placeholder.value = "";
    this.historySelect.appendChild(placeholder);
    for (const entry of this.history.list()) {
      const option = h(this.doc, "option", "", entry.slice(0, 70));
      option.value = entry;
      this.historySelect.appendChild(option);
    }
  }

  async run(offset: number): Promise<void> {
    const corpus = this.corpusSelect.value;
    const request = this.editor.value;
    const cluster = this.clusterInput.value.trim();
    this.inflight?.abort(); // one in-flight search at a time
    const controller = new AbortController();
    this.inflight = controller;
    this.offset = offset;
    this.errorBox.classList.add("hidden");
    this.status.textContent = "searching…";
    this.status.classList.add("spinner");
    let response: SearchResponse;
    try {
      response = await this.api.search(
        corpus,
        { request, cluster: cluster || null, limit: PAGE_SIZE, offset },
        controller.signal,
      );
    } catch (err) {
      if (controller.signal.aborted) return; // superseded by a newer search
      this.status.textContent = "";
      this.status.classList.remove("spinner");
      this.showError(err, request);
      return;
    }
    if (this.inflight === controller) this.inflight = null;
    this.status.textContent = "";
    this.status.classList.remove("spinner");
    this.history.add(request);
    this.refreshHistoryOptions();
    this.lastRun = { corpus, request, cluster };
    this.renderResults(response);
  }

  private showError(err: unknown, request: string): void {
    this.results.replaceChildren();
    this.errorBox.classList.remove("hidden");
    if (err instanceof QuerySyntaxFailure) {
      const lines = request.split("\n");
      const anchor =
        err.detail.line >= 1 && err.detail.line <= lines.length
          ? `\n  ${lines[err.detail.line - 1]}\n  ` +
            " ".repeat(Math.max(0, err.detail.col - 1)) + "^"
          : "";
      this.errorBox.textContent =
        `syntax error at ${err.detail.line}:${err.detail.col}: ` +
        `${err.detail.message}${anchor}`;
      return;
    }
    if (err instanceof ServiceFailure) {
      this.errorBox.textContent = `service error (${err.status}): ${err.message}`;
      return;
    }
    if (err instanceof ServiceUnreachable) {
      this.banner.textContent =
        "service unreachable — start it with: semgraph serve";
      this.banner.classList.remove("hidden");
      this.errorBox.classList.add("hidden");
      return;
    }
    this.errorBox.textContent = String(err);
  }

  private renderResults(response: SearchResponse): void {
    const doc = this.doc;
    this.results.replaceChildren();
    const header = h(
      doc,
      "h2",
      "total-header",
      `${response.total} occurrence${response.total === 1 ? "" : "s"}`,
    );
    this.results.appendChild(header);

    if (response.clusters) {
      this.results.appendChild(this.renderClusterTable(response.clusters));
    }

    const items = h(doc, "div", "items");
    for (const item of response.items) {
      items.appendChild(this.renderItem(item));
    }
    this.results.appendChild(items);

    if (response.total > PAGE_SIZE) {
      this.results.appendChild(this.renderPager(response.total));
    }
  }

  private renderClusterTable(
    clusters: Record<string, number>,
  ): HTMLTableElement {
    const doc = this.doc;
    const table = h(doc, "table", "cluster-table");
    const head = doc.createElement("tr");
    head.append(h(doc, "th", "", "cluster"), h(doc, "th", "", "count"));
    table.appendChild(head);
    const rows = Object.entries(clusters).sort(
      (a, b) => b[1] - a[1] || a[0].localeCompare(b[0]),
    );
    for (const [value, count] of rows) {
      const row = doc.createElement("tr");
      row.className = "cluster-row";
      row.append(h(doc, "td", "", value), h(doc, "td", "", String(count)));
      const refined = this.refineFor(value);
      if (refined !== null) {
        row.classList.add("clickable");
        row.addEventListener("click", () => {
          this.editor.value = refined;
          this.clusterInput.value = "";
          void this.run(0);
        });
      }
      table.appendChild(row);
    }
    return table;
  }

  /** A refined request for one cluster row, or null when the key kind
   * cannot be refined client-side (edge labels, undefined rows).  The
   * refinement re-runs on the service; the UI still computes nothing. */
  private refineFor(value: string): string | null {
    if (!this.lastRun || value === "__undefined__") return null;
    const key = this.lastRun.cluster;
    const base = this.lastRun.request.trimEnd();
    const whether = key.match(/^whether\s*(\{.*\})\s*$/s);
    if (whether) {
      const block = whether[1];
      return value === "yes"
        ? `${base}\npattern ${block}\n`
        : `${base}\nwithout ${block}\n`;
    }
    const nodeFeature = key.match(/^([A-Za-z_][A-Za-z0-9_]*)\.(.+)$/s);
    if (nodeFeature && nodeFeature[2] !== "label") {
      const quoted = value.replace(/\\/g, "\\\\").replace(/"/g, '\\"');
      return `${base}\npattern { ${nodeFeature[1]} [${nodeFeature[2]} = "${quoted}"] }\n`;
    }
    return null;
  }

  private renderItem(item: SearchItem): HTMLDivElement {
    const doc = this.doc;
    const container = h(doc, "div", "item");
    container.appendChild(h(doc, "h3", "item-id", item.sent_id));
    if (item.text) {
      container.appendChild(h(doc, "p", "item-text", item.text));
    }
    const graphBox = h(doc, "div", "graph");
    try {
      graphBox.appendChild(renderDot(item.dot, doc));
    } catch {
      // layout failed: fall back to the interchange text of the sentence
      graphBox.appendChild(h(doc, "div", "render-fallback", "graph view unavailable"));
      void this.api
        .fetchGraph(this.corpusSelect.value, item.sent_id, "interchange")
        .then((text) => {
          const pre = h(doc, "pre", "interchange-view");
          pre.textContent = text;
          graphBox.replaceChildren(pre);
        })
        .catch(() => {
          /* keep the placeholder; other items are unaffected */
        });
    }
    container.appendChild(graphBox);
    return container;
  }

  private renderPager(total: number): HTMLDivElement {
    const doc = this.doc;
    const pager = h(doc, "div", "pager");
    const prev = h(doc, "button", "prev", "previous");
    const next = h(doc, "button", "next", "next");
    const label = h(
      doc,
      "span",
      "page-label",
      `${this.offset + 1}–${Math.min(this.offset + PAGE_SIZE, total)} of ${total}`,
    );
    prev.disabled = this.offset === 0;
    next.disabled = this.offset + PAGE_SIZE >= total;
    prev.addEventListener("click", () => {
      void this.run(Math.max(0, this.offset - PAGE_SIZE));
    });
    next.addEventListener("click", () => {
      void this.run(this.offset + PAGE_SIZE);
    });
    pager.append(prev, label, next);
    return pager;
  }
}

function corpusLabel(corpus: {
  id: string;
  language: string | null;
  graphs: number;
}): string {
  const lang = corpus.language ? ` [${corpus.language}]` : "";
  return `${corpus.id}${lang} (${corpus.graphs} sentences)`;
}

function memoryStorage(): Pick<Storage, "getItem" | "setItem"> {
  const map = new Map<string, string>();
  return {
    getItem: (key) => map.get(key) ?? null,
    setItem: (key, value) => void map.set(key, value),
  };
}
