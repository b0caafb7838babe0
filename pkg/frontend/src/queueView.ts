/**
 * The work queue: the records awaiting the signed-in role, with paging and
 * periodic refresh.
 *
 * The server already scopes the listing to the caller's queue and omits
 * `source_lemmas` where the role must not see them (experts, non-gap
 * records); this component renders only what arrived, so nothing hidden
 * server-side can resurface here.
 */

import type { ApiClient, QueueQuery } from "./api.js";
import type { QueueItem, QueuePage } from "./types.js";
import { el, replaceChildren } from "./dom.js";
import { isolated } from "./bidi.js";

const REFRESH_INTERVAL_MS = 30_000;

export interface QueueViewOptions {
  client: ApiClient;
  onSelect: (item: QueueItem) => void;
  pageSize?: number;
  /** Override the refresh period; tests shorten it. */
  refreshMs?: number;
}

export class QueueView {
  readonly element: HTMLElement;

  private readonly client: ApiClient;
  private readonly onSelect: (item: QueueItem) => void;
  private readonly pageSize: number;
  private readonly refreshMs: number;
  private readonly table: HTMLTableSectionElement;
  private readonly status: HTMLElement;
  private readonly pageLabel: HTMLElement;
  private page = 1;
  private total = 0;
  private query: QueueQuery = {};
  private timer: ReturnType<typeof setInterval> | null = null;

  constructor(options: QueueViewOptions) {
    this.client = options.client;
    this.onSelect = options.onSelect;
    this.pageSize = options.pageSize ?? 25;
    this.refreshMs = options.refreshMs ?? REFRESH_INTERVAL_MS;

    this.status = el("p", { class: "queue-status" });
    this.pageLabel = el("span", { class: "queue-page" });
    this.table = el("tbody");

    const previous = el("button", { type: "button" }, "Previous");
    previous.addEventListener("click", () => this.turnPage(-1));
    const next = el("button", { type: "button" }, "Next");
    next.addEventListener("click", () => this.turnPage(1));

    this.element = el(
      "section",
      { class: "queue" },
      this.status,
      el(
        "table",
        {},
        el(
          "thead",
          {},
          el(
            "tr",
            {},
            el("th", {}, "Synset"),
            el("th", {}, "State"),
            el("th", {}, "Content"),
            el("th", {}, "Claimed by"),
          ),
        ),
        this.table,
      ),
      el("footer", {}, previous, this.pageLabel, next),
    );
  }

  /** Load the first page and start periodic refresh. */
  async start(query: QueueQuery = {}): Promise<void> {
    this.query = query;
    this.page = 1;
    await this.refresh();
    this.stop();
    this.timer = setInterval(() => {
      void this.refresh();
    }, this.refreshMs);
  }

  stop(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }

  async refresh(): Promise<void> {
    let pageData: QueuePage;
    try {
      pageData = await this.client.queue({
        ...this.query,
        page: this.page,
        page_size: this.pageSize,
      });
    } catch (error) {
      this.status.textContent = `Queue refresh failed: ${(error as Error).message}`;
      return;
    }
    this.total = pageData.total;
    this.status.textContent = `${pageData.total} record(s) in your queue`;
    this.pageLabel.textContent = `page ${pageData.page}`;
    replaceChildren(this.table, ...pageData.items.map((item) => this.row(item)));
  }

  private turnPage(step: number): void {
    const lastPage = Math.max(1, Math.ceil(this.total / this.pageSize));
    const target = Math.min(lastPage, Math.max(1, this.page + step));
    if (target !== this.page) {
      this.page = target;
      void this.refresh();
    }
  }

  private row(item: QueueItem): HTMLTableRowElement {
    const content = el("td", { class: "queue-content" });
    if (item.source_lemmas !== undefined) {
      content.append(el("span", { class: "source-lemmas" }, item.source_lemmas.join(", ")));
      content.append(" ");
    }
    const target = item.is_gap ? item.phrases : item.synonyms;
    for (const text of target) {
      content.append(isolated(text));
      content.append(" ");
    }

    const row = el(
      "tr",
      { class: "queue-row", "data-id": item.id },
      el("td", {}, `${item.id}${item.is_gap ? " (gap)" : ""}`),
      el("td", {}, item.state),
      content,
      el("td", {}, item.claimed_by ?? ""),
    );
    row.addEventListener("click", () => this.onSelect(item));
    return row;
  }
}
