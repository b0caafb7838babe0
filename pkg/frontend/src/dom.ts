/**
 * Minimal DOM building helper shared by the components.
 */

export type Child = Node | string | null | undefined;

/** Create an element with attributes and children in one call. */
export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: Child[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [name, value] of Object.entries(attrs)) {
    node.setAttribute(name, value);
  }
  for (const child of children) {
    if (child === null || child === undefined) continue;
    node.append(child);
  }
  return node;
}

/** Replace all children of a container. */
export function replaceChildren(container: HTMLElement, ...children: Child[]): void {
  container.textContent = "";
  for (const child of children) {
    if (child === null || child === undefined) continue;
    container.append(child);
  }
}
