/**
 * Application shell: token login, then the role's queue next to the
 * matching work surface (editor for translators, review screen for
 * correctors and experts; correctors also edit when a record bounced
 * back to them).
 */

import type { QueueItem, RecordView } from "./types.js";
import type { Session } from "./session.js";
import { login, remember, restore, forget } from "./session.js";
import { QueueView } from "./queueView.js";
import { EditorForm } from "./editorForm.js";
import { ReviewScreen } from "./reviewScreen.js";
import { el, replaceChildren } from "./dom.js";

export function mount(root: HTMLElement): void {
  void restore().then((session) => {
    if (session) {
      showWorkbench(root, session);
    } else {
      showLogin(root);
    }
  });
}

function showLogin(root: HTMLElement): void {
  const tokenInput = el("input", { type: "password", placeholder: "access token" });
  const baseInput = el("input", { type: "text", value: defaultBaseUrl() });
  const error = el("p", { class: "login-error" });
  const button = el("button", { type: "submit" }, "Sign in");

  const form = el(
    "form",
    { class: "login" },
    el("h1", {}, "lexibridge"),
    el("label", {}, "Server", baseInput),
    el("label", {}, "Token", tokenInput),
    button,
    error,
  );
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    login(baseInput.value.replace(/\/$/, ""), tokenInput.value).then(
      (session) => {
        remember(session);
        showWorkbench(root, session);
      },
      (failure: Error) => {
        error.textContent = `Sign-in failed: ${failure.message}`;
      },
    );
  });
  replaceChildren(root, form);
}

function showWorkbench(root: HTMLElement, session: Session): void {
  const detail = el("div", { class: "detail" }, el("p", {}, "Pick a record from your queue."));

  const editor = new EditorForm({
    client: session.client,
    onSaved: (view) => showRecord(view),
  });
  const review = new ReviewScreen({
    client: session.client,
    onReviewed: (view) => {
      showRecord(view);
      void queue.refresh();
    },
  });

  const queue = new QueueView({
    client: session.client,
    onSelect: (item: QueueItem) => {
      void session.client.record(item.id).then((view) => showRecord(view));
    },
  });

  function showRecord(view: RecordView): void {
    const state = view.record.state;
    const editing =
      session.role === "translator" ||
      (session.role === "corrector" && state === "returned_to_corrector");
    if (editing) {
      editor.load(view);
      replaceChildren(detail, editor.element);
    } else {
      review.load(view);
      replaceChildren(detail, review.element);
    }
  }

  const signOut = el("button", { type: "button", class: "sign-out" }, "Sign out");
  signOut.addEventListener("click", () => {
    queue.stop();
    forget();
    showLogin(root);
  });

  replaceChildren(
    root,
    el(
      "header",
      {},
      el("strong", {}, "lexibridge"),
      el("span", { class: "whoami" }, ` ${session.user} — ${session.role} `),
      signOut,
    ),
    el("main", { class: "workbench" }, queue.element, detail),
  );
  void queue.start();
}

function defaultBaseUrl(): string {
  if (typeof location !== "undefined" && location.origin !== "null") {
    return location.origin;
  }
  return "http://127.0.0.1:8787";
}

const rootElement = typeof document !== "undefined" ? document.getElementById("app") : null;
if (rootElement) {
  mount(rootElement);
}
