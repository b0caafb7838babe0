/**
 * The translation editor: gloss, ranked synonyms with examples, and the
 * lexical-gap alternative (substitute phrases instead of synonyms).
 *
 * Ranks are positional — moving a row up or down renumbers every synonym
 * 1..k, so a rank gap can never be expressed, let alone sent. The editor
 * mirrors the record-local completeness checks for instant feedback, but
 * the server remains the authority: a blocked transition's findings are
 * rendered verbatim.
 *
 * Concurrency: the form remembers the revision it loaded. When the server
 * answers 409 (someone else moved the record first), the form keeps every
 * unsaved field exactly as typed and offers an explicit reload instead of
 * discarding the user's work.
 */

import { ApiError } from "./api.js";
import type { ApiClient } from "./api.js";
import type { EditsPayload, FindingPayload, RecordView } from "./types.js";
import { autoDir } from "./bidi.js";
import { el, replaceChildren } from "./dom.js";

interface SynonymRowState {
  lemma: string;
  examples: string;
}

export interface EditorFormOptions {
  client: ApiClient;
  /** Called with the updated view after a successful action. */
  onSaved: (view: RecordView) => void;
}

export class EditorForm {
  readonly element: HTMLElement;

  private readonly client: ApiClient;
  private readonly onSaved: (view: RecordView) => void;

  private recordId = "";
  private expectedRevision = 0;
  private action = "submit";

  private readonly glossInput: HTMLTextAreaElement;
  private readonly gapToggle: HTMLInputElement;
  private readonly phrasesInput: HTMLTextAreaElement;
  private readonly synonymList: HTMLElement;
  private readonly noteInput: HTMLTextAreaElement;
  private readonly localFindings: HTMLElement;
  private readonly serverFindings: HTMLElement;
  private readonly conflictBanner: HTMLElement;
  private readonly saveButton: HTMLButtonElement;
  private readonly notUnderstoodButton: HTMLButtonElement;

  constructor(options: EditorFormOptions) {
    this.client = options.client;
    this.onSaved = options.onSaved;

    this.glossInput = autoDir(el("textarea", { class: "gloss", rows: "3" }));
    this.gapToggle = el("input", { type: "checkbox", class: "gap-toggle" });
    this.phrasesInput = autoDir(
      el("textarea", { class: "phrases", rows: "3", placeholder: "one substitute phrase per line" }),
    );
    this.synonymList = el("div", { class: "synonyms" });
    this.noteInput = autoDir(el("textarea", { class: "difficulty-note", rows: "2" }));
    this.localFindings = el("ul", { class: "local-findings" });
    this.serverFindings = el("ul", { class: "server-findings" });
    this.conflictBanner = el("div", { class: "conflict-banner", hidden: "" });
    this.saveButton = el("button", { type: "button", class: "save" }, "Save");
    this.notUnderstoodButton = el(
      "button",
      { type: "button", class: "mark-not-understood" },
      "I don't understand this concept",
    );

    const addSynonym = el("button", { type: "button", class: "add-synonym" }, "Add synonym");
    addSynonym.addEventListener("click", () => {
      this.synonymList.append(this.synonymRow({ lemma: "", examples: "" }));
      this.runLocalChecks();
    });

    this.gapToggle.addEventListener("change", () => this.applyGapMode());
    this.glossInput.addEventListener("input", () => this.runLocalChecks());
    this.phrasesInput.addEventListener("input", () => this.runLocalChecks());
    this.saveButton.addEventListener("click", () => void this.save());
    this.notUnderstoodButton.addEventListener("click", () => void this.markNotUnderstood());

    this.element = el(
      "form",
      { class: "editor" },
      this.conflictBanner,
      el("label", {}, "Gloss", this.glossInput),
      el("label", { class: "gap-label" }, this.gapToggle, "No word exists for this concept"),
      el("div", { class: "gap-editor" }, el("label", {}, "Substitute phrases", this.phrasesInput)),
      el("div", { class: "synonym-editor" }, this.synonymList, addSynonym),
      this.localFindings,
      this.serverFindings,
      el("label", { class: "note-label" }, "Note", this.noteInput),
      el("footer", {}, this.saveButton, this.notUnderstoodButton),
    );
    this.element.addEventListener("submit", (event) => event.preventDefault());
  }

  /** Populate the form from a freshly loaded record view. */
  load(view: RecordView): void {
    const record = view.record;
    this.recordId = record.source;
    this.expectedRevision = record.revision;
    this.action = record.state === "untranslated" ? "submit" : "resubmit";

    this.glossInput.value = record.gloss;
    this.gapToggle.checked = record.is_gap;
    this.phrasesInput.value = record.phrases.join("\n");
    replaceChildren(
      this.synonymList,
      ...record.synonyms.map((s) => this.synonymRow({ lemma: s.lemma, examples: s.examples.join("\n") })),
    );
    this.noteInput.value = "";
    this.conflictBanner.hidden = true;
    replaceChildren(this.serverFindings);
    this.notUnderstoodButton.hidden = record.state !== "untranslated";
    this.applyGapMode();
  }

  /** The edits the form would send right now. */
  collect(): EditsPayload {
    if (this.gapToggle.checked) {
      return {
        gloss: this.glossInput.value,
        is_gap: true,
        phrases: splitLines(this.phrasesInput.value),
        synonyms: [],
      };
    }
    return {
      gloss: this.glossInput.value,
      is_gap: false,
      phrases: [],
      synonyms: this.synonymStates().map((row, index) => ({
        lemma: row.lemma,
        rank: index + 1,
        examples: splitLines(row.examples),
      })),
    };
  }

  /** Record-local completeness problems with the current form content. */
  localProblems(): string[] {
    const problems: string[] = [];
    if (this.gapToggle.checked) {
      if (splitLines(this.phrasesInput.value).length === 0) {
        problems.push("a gap needs at least one substitute phrase");
      }
      return problems;
    }
    if (this.glossInput.value.trim() === "") {
      problems.push("the gloss is empty");
    }
    const rows = this.synonymStates();
    if (rows.length === 0) {
      problems.push("add at least one synonym");
    }
    const seen = new Set<string>();
    rows.forEach((row, index) => {
      const lemma = row.lemma.trim();
      if (lemma === "") {
        problems.push(`synonym ${index + 1} has no lemma`);
        return;
      }
      if (seen.has(lemma)) {
        problems.push(`"${lemma}" is listed twice`);
      }
      seen.add(lemma);
      if (splitLines(row.examples).length === 0) {
        problems.push(`"${lemma}" has no example sentence`);
      }
    });
    return problems;
  }

  private async save(): Promise<void> {
    if (this.recordId === "") return;
    try {
      const view = await this.client.transition(this.recordId, {
        action: this.action,
        expected_revision: this.expectedRevision,
        note: this.noteInput.value,
        edits: this.collect(),
      });
      this.conflictBanner.hidden = true;
      replaceChildren(this.serverFindings);
      this.onSaved(view);
    } catch (error) {
      this.showFailure(error);
    }
  }

  private async markNotUnderstood(): Promise<void> {
    if (this.recordId === "") return;
    try {
      const view = await this.client.transition(this.recordId, {
        action: "mark_not_understood",
        expected_revision: this.expectedRevision,
        note: this.noteInput.value,
      });
      this.onSaved(view);
    } catch (error) {
      this.showFailure(error);
    }
  }

  /**
   * Render a failure without touching any input: whatever the user typed
   * stays in the form, including after an edit conflict.
   */
  private showFailure(error: unknown): void {
    if (error instanceof ApiError && error.isStaleRevision) {
      this.conflictBanner.hidden = false;
      replaceChildren(
        this.conflictBanner,
        el("p", {}, "Someone else changed this record while you were editing. ",
          "Your text is untouched; reload to see theirs before saving again."),
        this.reloadButton(),
      );
      return;
    }
    if (error instanceof ApiError) {
      this.renderServerFindings(error.findings, error.message);
      return;
    }
    this.renderServerFindings([], (error as Error).message);
  }

  private reloadButton(): HTMLButtonElement {
    const button = el("button", { type: "button", class: "reload-latest" }, "Load latest version");
    button.addEventListener("click", () => {
      void this.client.record(this.recordId).then((view) => {
        this.load(view);
      });
    });
    return button;
  }

  private renderServerFindings(findings: FindingPayload[], fallback: string): void {
    const items = findings.length
      ? findings.map((f) => el("li", { class: `finding ${f.severity}` }, `${f.rule_id}: ${f.message}`))
      : [el("li", { class: "finding error" }, fallback)];
    replaceChildren(this.serverFindings, ...items);
  }

  private applyGapMode(): void {
    const gap = this.gapToggle.checked;
    const gapEditor = this.element.querySelector<HTMLElement>(".gap-editor");
    const synonymEditor = this.element.querySelector<HTMLElement>(".synonym-editor");
    if (gapEditor) gapEditor.hidden = !gap;
    if (synonymEditor) synonymEditor.hidden = gap;
    this.runLocalChecks();
  }

  private runLocalChecks(): void {
    const problems = this.localProblems();
    replaceChildren(this.localFindings, ...problems.map((p) => el("li", { class: "finding local" }, p)));
    this.saveButton.disabled = problems.length > 0;
  }

  private synonymStates(): SynonymRowState[] {
    return Array.from(this.synonymList.querySelectorAll<HTMLElement>(".synonym-row")).map((row) => ({
      lemma: row.querySelector<HTMLInputElement>(".lemma")?.value ?? "",
      examples: row.querySelector<HTMLTextAreaElement>(".examples")?.value ?? "",
    }));
  }

  private synonymRow(state: SynonymRowState): HTMLElement {
    const lemma = autoDir(el("input", { type: "text", class: "lemma", value: state.lemma }));
    lemma.value = state.lemma;
    const examples = autoDir(
      el("textarea", { class: "examples", rows: "2", placeholder: "one example per line" }),
    );
    examples.value = state.examples;

    const up = el("button", { type: "button", class: "move-up", title: "Move up" }, "↑");
    const down = el("button", { type: "button", class: "move-down", title: "Move down" }, "↓");
    const remove = el("button", { type: "button", class: "remove" }, "Remove");

    const row = el(
      "div",
      { class: "synonym-row" },
      el("span", { class: "rank" }),
      lemma,
      examples,
      up,
      down,
      remove,
    );

    up.addEventListener("click", () => {
      const previous = row.previousElementSibling;
      if (previous) row.parentElement?.insertBefore(row, previous);
      this.renumber();
    });
    down.addEventListener("click", () => {
      const next = row.nextElementSibling;
      if (next) next.after(row);
      this.renumber();
    });
    remove.addEventListener("click", () => {
      row.remove();
      this.renumber();
    });
    lemma.addEventListener("input", () => this.runLocalChecks());
    examples.addEventListener("input", () => this.runLocalChecks());

    queueMicrotask(() => this.renumber());
    return row;
  }

  /** Keep the displayed ranks equal to the positional ranks 1..k. */
  private renumber(): void {
    const rows = this.synonymList.querySelectorAll<HTMLElement>(".synonym-row");
    rows.forEach((row, index) => {
      const rank = row.querySelector<HTMLElement>(".rank");
      if (rank) rank.textContent = String(index + 1);
    });
    this.runLocalChecks();
  }
}

function splitLines(text: string): string[] {
  return text
    .split("\n")
    .map((line) => line.trim())
    .filter((line) => line !== "");
}
