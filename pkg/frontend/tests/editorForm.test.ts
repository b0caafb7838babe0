/**
 * EditorForm: an edit conflict (409) must leave every unsaved field exactly
 * as typed; positional ranks stay contiguous through reordering; the local
 * completeness mirror gates the save button.
 */

import { beforeEach, describe, expect, it, vi } from "vitest";
import { ApiError } from "../src/api.js";
import { EditorForm } from "../src/editorForm.js";
import { flush, recordPayload, recordView } from "./fixtures.js";
import { stubClient } from "./fixtures.js";

function mount(options: { transition?: ReturnType<typeof vi.fn>; record?: ReturnType<typeof vi.fn> } = {}) {
  const transition = options.transition ?? vi.fn();
  const record = options.record ?? vi.fn();
  const onSaved = vi.fn();
  const form = new EditorForm({ client: stubClient({ transition, record }), onSaved });
  document.body.append(form.element);
  const q = <T extends HTMLElement>(selector: string) => form.element.querySelector<T>(selector) as T;
  return {
    form,
    transition,
    record,
    onSaved,
    gloss: q<HTMLTextAreaElement>(".gloss"),
    gapToggle: q<HTMLInputElement>(".gap-toggle"),
    phrases: q<HTMLTextAreaElement>(".phrases"),
    note: q<HTMLTextAreaElement>(".difficulty-note"),
    save: q<HTMLButtonElement>(".save"),
    addSynonym: q<HTMLButtonElement>(".add-synonym"),
    banner: q(".conflict-banner"),
    localFindings: q(".local-findings"),
    serverFindings: q(".server-findings"),
  };
}

/** A record the translator got back for rework. */
function reworkView() {
  return recordView({
    record: recordPayload({ state: "returned_to_translator", revision: 2 }),
    role: "translator",
  });
}

function type(input: HTMLInputElement | HTMLTextAreaElement, value: string): void {
  input.value = value;
  input.dispatchEvent(new Event("input"));
}

beforeEach(() => {
  document.body.innerHTML = "";
});

describe("edit conflicts", () => {
  it("keeps every unsaved field as typed when the save hits a 409", async () => {
    const transition = vi.fn().mockRejectedValue(new ApiError(409, "stale_revision", "expected revision 2"));
    const { form, transition: t, gloss, note, save, banner, onSaved } = mount({ transition });
    form.load(reworkView());
    await flush();

    type(gloss, "وسيلة نقل بأربع عجلات");
    const firstLemma = form.element.querySelector<HTMLInputElement>(".lemma") as HTMLInputElement;
    type(firstLemma, "عربة");
    type(note, "صياغة أدق");

    save.click();
    await flush();

    expect(t).toHaveBeenCalledTimes(1);
    expect(t.mock.calls[0]?.[1]).toMatchObject({ action: "resubmit", expected_revision: 2 });

    // Nothing the user typed moved, and the conflict is announced.
    expect(gloss.value).toBe("وسيلة نقل بأربع عجلات");
    expect(firstLemma.value).toBe("عربة");
    expect(note.value).toBe("صياغة أدق");
    expect(banner.hidden).toBe(false);
    expect(banner.textContent).toContain("Your text is untouched");
    expect(onSaved).not.toHaveBeenCalled();
  });

  it("reloads the latest version only on explicit request", async () => {
    const transition = vi.fn().mockRejectedValue(new ApiError(409, "stale_revision", "expected revision 2"));
    const fresh = recordView({
      record: recordPayload({ state: "pending_correction", revision: 7, gloss: "نسخة أحدث" }),
      role: "translator",
    });
    const record = vi.fn().mockResolvedValue(fresh);
    const { form, gloss, save, banner } = mount({ transition, record });
    form.load(reworkView());
    await flush();

    type(gloss, "نص لم يحفظ بعد");
    save.click();
    await flush();
    expect(gloss.value).toBe("نص لم يحفظ بعد");

    const reload = banner.querySelector<HTMLButtonElement>(".reload-latest");
    expect(reload).not.toBeNull();
    reload?.click();
    await flush();

    expect(record).toHaveBeenCalledWith("noun:02958343");
    expect(gloss.value).toBe("نسخة أحدث");
    expect(banner.hidden).toBe(true);

    // The next save carries the reloaded revision.
    transition.mockResolvedValue(fresh);
    save.click();
    await flush();
    expect(transition.mock.calls[1]?.[1]).toMatchObject({ expected_revision: 7 });
  });

  it("hands the updated view to onSaved after a successful save", async () => {
    const updated = recordView({ record: recordPayload({ state: "pending_correction", revision: 3 }) });
    const transition = vi.fn().mockResolvedValue(updated);
    const { form, save, onSaved, banner } = mount({ transition });
    form.load(reworkView());
    await flush();

    save.click();
    await flush();

    expect(onSaved).toHaveBeenCalledWith(updated);
    expect(banner.hidden).toBe(true);
  });

  it("renders blocked-transition findings without touching the form", async () => {
    const transition = vi.fn().mockRejectedValue(
      new ApiError(422, "validation_blocked", "record is not complete", [
        { rule_id: "E04", severity: "error", message: "synonym lacks an example", locus: "noun:02958343#1" },
      ]),
    );
    const { form, gloss, save, serverFindings, banner } = mount({ transition });
    form.load(reworkView());
    await flush();

    type(gloss, "شرح معدل");
    save.click();
    await flush();

    expect(serverFindings.textContent).toContain("E04: synonym lacks an example");
    expect(gloss.value).toBe("شرح معدل");
    expect(banner.hidden).toBe(true);
  });
});

describe("first submission", () => {
  it("submits an untranslated record and resubmits anything else", async () => {
    const transition = vi.fn().mockResolvedValue(recordView());
    const { form, save } = mount({ transition });

    form.load(
      recordView({
        record: recordPayload({ state: "untranslated", revision: 0 }),
        role: "translator",
      }),
    );
    await flush();
    save.click();
    await flush();
    expect(transition.mock.calls[0]?.[1].action).toBe("submit");

    form.load(reworkView());
    await flush();
    save.click();
    await flush();
    expect(transition.mock.calls[1]?.[1].action).toBe("resubmit");
  });

  it("offers 'not understood' only on untranslated records", () => {
    const { form } = mount();
    const button = form.element.querySelector<HTMLButtonElement>(".mark-not-understood") as HTMLButtonElement;

    form.load(recordView({ record: recordPayload({ state: "untranslated", revision: 0 }) }));
    expect(button.hidden).toBe(false);

    form.load(reworkView());
    expect(button.hidden).toBe(true);
  });

  it("sends mark_not_understood with the difficulty note", async () => {
    const transition = vi.fn().mockResolvedValue(recordView());
    const { form, note } = mount({ transition });
    form.load(recordView({ record: recordPayload({ state: "untranslated", revision: 0 }) }));

    type(note, "مصطلح تقني غامض");
    const button = form.element.querySelector<HTMLButtonElement>(".mark-not-understood") as HTMLButtonElement;
    button.click();
    await flush();

    expect(transition).toHaveBeenCalledWith("noun:02958343", {
      action: "mark_not_understood",
      expected_revision: 0,
      note: "مصطلح تقني غامض",
    });
  });
});

describe("local completeness mirror", () => {
  it("disables save until the form is complete", async () => {
    const { form, gloss, save, addSynonym, localFindings } = mount();
    form.load(
      recordView({
        record: recordPayload({ state: "untranslated", revision: 0, gloss: "", synonyms: [] }),
      }),
    );
    await flush();

    expect(save.disabled).toBe(true);
    expect(localFindings.textContent).toContain("gloss is empty");
    expect(localFindings.textContent).toContain("at least one synonym");

    type(gloss, "وسيلة نقل");
    addSynonym.click();
    await flush();
    expect(save.disabled).toBe(true);

    const lemma = form.element.querySelector<HTMLInputElement>(".lemma") as HTMLInputElement;
    const examples = form.element.querySelector<HTMLTextAreaElement>(".examples") as HTMLTextAreaElement;
    type(lemma, "سيارة");
    expect(localFindings.textContent).toContain("no example sentence");
    type(examples, "اشتريت سيارة جديدة");

    expect(save.disabled).toBe(false);
    expect(localFindings.childElementCount).toBe(0);
  });

  it("flags duplicate lemmas", async () => {
    const { form } = mount();
    form.load(reworkView());
    await flush();

    const lemmas = form.element.querySelectorAll<HTMLInputElement>(".lemma");
    type(lemmas[1] as HTMLInputElement, "سيارة");

    expect(form.localProblems()).toContain('"سيارة" is listed twice');
  });
});

describe("gap mode", () => {
  it("swaps the synonym editor for phrases and collects a gap payload", async () => {
    const { form, gapToggle, phrases, save } = mount();
    form.load(reworkView());
    await flush();

    gapToggle.checked = true;
    gapToggle.dispatchEvent(new Event("change"));

    const gapEditor = form.element.querySelector<HTMLElement>(".gap-editor") as HTMLElement;
    const synonymEditor = form.element.querySelector<HTMLElement>(".synonym-editor") as HTMLElement;
    expect(gapEditor.hidden).toBe(false);
    expect(synonymEditor.hidden).toBe(true);
    expect(save.disabled).toBe(true); // no phrases yet

    type(phrases, "وسيلة نقل خاصة\n\n  عربة للمشاوير  ");
    expect(save.disabled).toBe(false);
    expect(form.collect()).toEqual({
      gloss: "وسيلة نقل ذات عجلات",
      is_gap: true,
      phrases: ["وسيلة نقل خاصة", "عربة للمشاوير"],
      synonyms: [],
    });
  });
});

describe("positional ranks", () => {
  it("renumbers 1..k when rows move, and collects ranks in display order", async () => {
    const { form } = mount();
    form.load(reworkView());
    await flush(); // let the row-creation microtasks renumber

    const ranks = () =>
      Array.from(form.element.querySelectorAll<HTMLElement>(".rank")).map((r) => r.textContent);
    expect(ranks()).toEqual(["1", "2"]);

    const rows = form.element.querySelectorAll<HTMLElement>(".synonym-row");
    (rows[1]?.querySelector<HTMLButtonElement>(".move-up") as HTMLButtonElement).click();
    await flush();

    expect(ranks()).toEqual(["1", "2"]);
    expect(form.collect().synonyms).toEqual([
      { lemma: "مركبة", rank: 1, examples: ["هذه مركبة سريعة"] },
      { lemma: "سيارة", rank: 2, examples: ["اشتريت سيارة جديدة"] },
    ]);
  });

  it("keeps ranks contiguous after a removal", async () => {
    const { form } = mount();
    form.load(reworkView());
    await flush();

    const firstRow = form.element.querySelector<HTMLElement>(".synonym-row") as HTMLElement;
    (firstRow.querySelector<HTMLButtonElement>(".remove") as HTMLButtonElement).click();
    await flush();

    expect(form.element.querySelector<HTMLElement>(".rank")?.textContent).toBe("1");
    expect(form.collect().synonyms).toEqual([
      { lemma: "مركبة", rank: 1, examples: ["هذه مركبة سريعة"] },
    ]);
  });
});
