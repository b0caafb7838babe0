/**
 * Bidirectional text helpers.
 *
 * The workbench mixes a left-to-right source language with target content
 * that may be right-to-left (Arabic in the original deployment). Rather
 * than guessing languages, every text container and input gets
 * `dir="auto"`: the browser picks the direction from the first strong
 * directional character, which handles mixed content per element.
 */

/** Apply automatic direction detection to an element and return it. */
export function autoDir<T extends HTMLElement>(element: T): T {
  element.setAttribute("dir", "auto");
  return element;
}

/**
 * Wrap a string in a <bdi> so it cannot visually bleed into neighbouring
 * text of the opposite direction (e.g. an Arabic lemma inside an English
 * sentence, or vice versa).
 */
export function isolated(text: string): HTMLElement {
  const bdi = document.createElement("bdi");
  bdi.textContent = text;
  return bdi;
}
