/**
 * Shared builders for component tests: wire-shaped payloads and a client
 * stub whose methods are vitest mocks.
 */

import { vi } from "vitest";
import type { ApiClient } from "../src/api.js";
import type { QueueItem, QueuePage, RecordPayload, RecordView, SourcePayload } from "../src/types.js";

/** English source material that must never surface on an expert screen. */
export const SOURCE_ENGLISH = {
  lemmas: ["car", "auto", "automobile"],
  gloss: "a motor vehicle with four wheels",
  example: "he needs a car to get to work",
};

export function sourcePayload(overrides: Partial<SourcePayload> = {}): SourcePayload {
  return {
    id: "noun:02958343",
    lemmas: [...SOURCE_ENGLISH.lemmas],
    gloss: SOURCE_ENGLISH.gloss,
    examples: [SOURCE_ENGLISH.example],
    hypernyms: [],
    lex_file: 6,
    ...overrides,
  };
}

export function recordPayload(overrides: Partial<RecordPayload> = {}): RecordPayload {
  return {
    source: "noun:02958343",
    state: "pending_expert",
    is_gap: false,
    phrases: [],
    synonyms: [
      { lemma: "سيارة", rank: 1, examples: ["اشتريت سيارة جديدة"] },
      { lemma: "مركبة", rank: 2, examples: ["هذه مركبة سريعة"] },
    ],
    gloss: "وسيلة نقل ذات عجلات",
    not_understood: false,
    revision: 2,
    history: [],
    ...overrides,
  };
}

export function recordView(overrides: Partial<RecordView> = {}): RecordView {
  return {
    record: recordPayload(),
    source: sourcePayload(),
    role: "corrector",
    redacted: false,
    claimed_by: null,
    ...overrides,
  };
}

/** What the server hands an expert for a non-gap record. */
export function expertView(recordOverrides: Partial<RecordPayload> = {}): RecordView {
  return recordView({
    record: recordPayload(recordOverrides),
    source: null,
    role: "expert",
    redacted: true,
  });
}

export function queueItem(overrides: Partial<QueueItem> = {}): QueueItem {
  return {
    id: "noun:02958343",
    pos: "noun",
    offset: "02958343",
    state: "untranslated",
    is_gap: false,
    not_understood: false,
    revision: 0,
    synonyms: [],
    phrases: [],
    claimed_by: null,
    ...overrides,
  };
}

export function queuePage(items: QueueItem[], overrides: Partial<QueuePage> = {}): QueuePage {
  return {
    items,
    page: 1,
    page_size: 25,
    total: items.length,
    queue_states: ["untranslated", "returned_to_translator"],
    ...overrides,
  };
}

type ClientMethods = {
  [K in keyof ApiClient]: ApiClient[K] extends (...args: never[]) => unknown ? K : never;
}[keyof ApiClient];

/** A client whose methods are all mocks; override the ones the test drives. */
export function stubClient(
  overrides: Partial<Record<ClientMethods, ReturnType<typeof vi.fn>>> = {},
): ApiClient {
  const base = {
    me: vi.fn(),
    queue: vi.fn(),
    record: vi.fn(),
    transition: vi.fn(),
    claim: vi.fn(),
    release: vi.fn(),
    validate: vi.fn(),
    inventory: vi.fn(),
    ...overrides,
  };
  return base as unknown as ApiClient;
}

/**
 * A minimal stand-in for a fetch Response: the client only reads `ok`,
 * `status`, `statusText`, and `json()`.
 */
export function wireResponse(status: number, body: unknown): Response {
  return {
    ok: status >= 200 && status < 300,
    status,
    statusText: `status ${status}`,
    json: async () => body,
  } as unknown as Response;
}

/** Let pending promise callbacks and microtasks run. */
export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}
