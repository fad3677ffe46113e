/** Query history in browser localStorage: most recent first, capped. */

const KEY = "semgraph.history";

export class QueryHistory {
  constructor(
    private storage: Pick<Storage, "getItem" | "setItem">,
    private limit = 50,
  ) {}

  list(): string[] {
    try {
      const raw = this.storage.getItem(KEY);
      const parsed = raw ? JSON.parse(raw) : [];
      return Array.isArray(parsed) ? parsed.filter(
        (q): q is string => typeof q === "string") : [];
    } catch {
      return [];
    }
  }

  add(query: string): void {
    const trimmed = query.trim();
    if (!trimmed) return;
    const entries = this.list().filter((q) => q !== trimmed);
    entries.unshift(trimmed);
    this.storage.setItem(KEY, JSON.stringify(entries.slice(0, this.limit)));
  }
}
