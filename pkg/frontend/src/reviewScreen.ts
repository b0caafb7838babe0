/**
 * The review screen for correctors and experts: read the record, accept,
 * or reject with a mandatory note.
 *
 * What it shows is exactly what the server sent. For an expert on an
 * ordinary record the server redacts the source synset (`source: null`),
 * so the screen has nothing source-language to render — the expert judges
 * the target content alone. Gap records keep the source visible for every
 * role because the claim under review is "this concept has no word".
 *
 * A rejection must explain itself: the reject button stays disabled until
 * the note has content, matching the server rule rather than relying on
 * it. When rejecting a gap claim, a corrector can attach counter-synonyms
 * — disproof by example — which clears the gap flag on the record.
 */

import { ApiError } from "./api.js";
import type { ApiClient } from "./api.js";
import type { EditsPayload, RecordView } from "./types.js";
import { autoDir, isolated } from "./bidi.js";
import { el, replaceChildren } from "./dom.js";

export interface ReviewScreenOptions {
  client: ApiClient;
  onReviewed: (view: RecordView) => void;
}

export class ReviewScreen {
  readonly element: HTMLElement;

  private readonly client: ApiClient;
  private readonly onReviewed: (view: RecordView) => void;

  private view: RecordView | null = null;

  private readonly content: HTMLElement;
  private readonly sourcePanel: HTMLElement;
  private readonly counterPanel: HTMLElement;
  private readonly counterInput: HTMLTextAreaElement;
  private readonly noteInput: HTMLTextAreaElement;
  private readonly acceptButton: HTMLButtonElement;
  private readonly rejectButton: HTMLButtonElement;
  private readonly failure: HTMLElement;

  constructor(options: ReviewScreenOptions) {
    this.client = options.client;
    this.onReviewed = options.onReviewed;

    this.content = el("div", { class: "record-content" });
    this.sourcePanel = el("aside", { class: "source-panel" });
    this.counterInput = autoDir(
      el("textarea", {
        class: "counter-synonyms",
        rows: "2",
        placeholder: "one word per line: lemma, tab, example",
      }),
    );
    this.counterPanel = el(
      "div",
      { class: "counter-panel", hidden: "" },
      el("p", {}, "Rejecting a gap claim? List the words that do exist:"),
      this.counterInput,
    );
    this.noteInput = autoDir(el("textarea", { class: "review-note", rows: "2" }));
    this.acceptButton = el("button", { type: "button", class: "accept" }, "Accept");
    this.rejectButton = el("button", { type: "button", class: "reject" }, "Reject");
    this.rejectButton.disabled = true;
    this.failure = el("div", { class: "review-failure" });

    this.noteInput.addEventListener("input", () => {
      this.rejectButton.disabled = this.noteInput.value.trim() === "";
    });
    this.acceptButton.addEventListener("click", () => void this.decide("accept"));
    this.rejectButton.addEventListener("click", () => void this.decide("reject"));

    this.element = el(
      "section",
      { class: "review" },
      this.sourcePanel,
      this.content,
      this.counterPanel,
      el("label", { class: "note-label" }, "Review note (required to reject)", this.noteInput),
      el("footer", {}, this.acceptButton, this.rejectButton),
      this.failure,
    );
  }

  load(view: RecordView): void {
    this.view = view;
    this.noteInput.value = "";
    this.rejectButton.disabled = true;
    replaceChildren(this.failure);
    this.renderSource(view);
    this.renderContent(view);
    this.counterPanel.hidden = !(view.record.is_gap && view.role === "corrector");
    this.counterInput.value = "";
  }

  /** Render the source panel, or nothing at all when it was redacted. */
  private renderSource(view: RecordView): void {
    if (view.source === null) {
      replaceChildren(this.sourcePanel);
      this.sourcePanel.hidden = true;
      return;
    }
    this.sourcePanel.hidden = false;
    replaceChildren(
      this.sourcePanel,
      el("h3", {}, view.source.id),
      el("p", { class: "source-lemmas" }, view.source.lemmas.join(", ")),
      el("p", { class: "source-gloss" }, view.source.gloss),
      el(
        "ul",
        { class: "source-examples" },
        ...view.source.examples.map((example) => el("li", {}, example)),
      ),
    );
  }

  private renderContent(view: RecordView): void {
    const record = view.record;
    const pieces: (HTMLElement | string)[] = [
      el("h3", {}, `${record.source} — ${record.state}`),
      el("p", { class: "gloss" }, isolated(record.gloss)),
    ];
    if (record.is_gap) {
      pieces.push(
        el("p", { class: "gap-note" }, "Marked as a lexical gap; substitute phrases:"),
        el("ul", { class: "phrases" }, ...record.phrases.map((p) => el("li", {}, isolated(p)))),
      );
    } else {
      pieces.push(
        el(
          "ol",
          { class: "synonyms" },
          ...record.synonyms.map((s) =>
            el(
              "li",
              {},
              isolated(s.lemma),
              el("ul", { class: "examples" }, ...s.examples.map((e) => el("li", {}, isolated(e)))),
            ),
          ),
        ),
      );
    }
    const notes = record.history.filter((event) => event.note !== "");
    if (notes.length > 0) {
      pieces.push(
        el(
          "ul",
          { class: "history-notes" },
          ...notes.map((event) =>
            el("li", {}, `${event.actor} (${event.action}): `, isolated(event.note)),
          ),
        ),
      );
    }
    replaceChildren(this.content, ...pieces);
  }

  private async decide(action: "accept" | "reject"): Promise<void> {
    if (!this.view) return;
    const record = this.view.record;
    try {
      const updated = await this.client.transition(record.source, {
        action,
        expected_revision: record.revision,
        note: this.noteInput.value,
        edits: action === "reject" ? this.counterEdits() : undefined,
      });
      this.onReviewed(updated);
    } catch (error) {
      this.showFailure(error);
    }
  }

  /** Counter-synonyms typed against a gap claim, as reject edits. */
  private counterEdits(): EditsPayload | undefined {
    if (this.counterPanel.hidden) return undefined;
    const rows = this.counterInput.value
      .split("\n")
      .map((line) => line.trim())
      .filter((line) => line !== "");
    if (rows.length === 0) return undefined;
    return {
      is_gap: false,
      phrases: [],
      synonyms: rows.map((line, index) => {
        const [lemma = "", example = ""] = line.split("\t");
        return {
          lemma: lemma.trim(),
          rank: index + 1,
          examples: example.trim() === "" ? [] : [example.trim()],
        };
      }),
    };
  }

  private showFailure(error: unknown): void {
    if (error instanceof ApiError && error.isStaleRevision) {
      const reload = el("button", { type: "button", class: "reload-latest" }, "Load latest version");
      reload.addEventListener("click", () => {
        if (!this.view) return;
        void this.client.record(this.view.record.source).then((fresh) => this.load(fresh));
      });
      replaceChildren(
        this.failure,
        el("p", {}, "This record changed while you were reviewing it."),
        reload,
      );
      return;
    }
    const message =
      error instanceof ApiError && error.findings.length > 0
        ? error.findings.map((f) => `${f.rule_id}: ${f.message}`).join("; ")
        : (error as Error).message;
    replaceChildren(this.failure, el("p", { class: "finding error" }, message));
  }
}
