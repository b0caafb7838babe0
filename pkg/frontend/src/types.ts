/**
 * Payload shapes of the lexibridge HTTP API.
 *
 * These mirror what the server serializes; the client treats them as
 * read-only wire data and never invents fields the server did not send.
 */

export type RoleName = "translator" | "corrector" | "expert";

export type StateName =
  | "untranslated"
  | "not_understood"
  | "pending_correction"
  | "returned_to_translator"
  | "pending_expert"
  | "returned_to_corrector"
  | "accepted";

export interface MeResponse {
  user: string;
  role: RoleName;
}

export interface SynonymPayload {
  lemma: string;
  rank: number;
  examples: string[];
}

export interface WorkflowEventPayload {
  actor: string;
  role: RoleName;
  action: string;
  note: string;
  timestamp: string;
  revision: number;
  warnings: string[];
}

export interface RecordPayload {
  source: string;
  state: StateName;
  is_gap: boolean;
  phrases: string[];
  synonyms: SynonymPayload[];
  gloss: string;
  not_understood: boolean;
  revision: number;
  history: WorkflowEventPayload[];
}

/** The source synset; null when the server redacted it for an expert. */
export interface SourcePayload {
  id: string;
  lemmas: string[];
  gloss: string;
  examples: string[];
  hypernyms: string[];
  lex_file: number;
}

export interface RecordView {
  record: RecordPayload;
  source: SourcePayload | null;
  role: RoleName;
  redacted: boolean;
  claimed_by: string | null;
}

export interface QueueItem {
  id: string;
  pos: string;
  offset: string;
  state: StateName;
  is_gap: boolean;
  not_understood: boolean;
  revision: number;
  synonyms: string[];
  phrases: string[];
  claimed_by: string | null;
  /** Omitted by the server for experts on non-gap records. */
  source_lemmas?: string[];
}

export interface QueuePage {
  items: QueueItem[];
  page: number;
  page_size: number;
  total: number;
  queue_states: StateName[];
}

export interface FindingPayload {
  rule_id: string;
  severity: "error" | "warning";
  message: string;
  locus: string;
}

export interface ValidateResponse {
  findings: FindingPayload[];
  report: string;
  blocking: boolean;
}

export interface EditsPayload {
  gloss?: string;
  is_gap?: boolean;
  phrases?: string[];
  synonyms?: { lemma: string; rank: number; examples: string[] }[];
}

export interface TransitionRequest {
  action: string;
  expected_revision: number;
  note?: string;
  edits?: EditsPayload;
}

export interface PosBreakdownPayload {
  nouns: number;
  verbs: number;
  adjectives: number;
  adverbs: number;
  total: number;
}

export interface InventoryResponse {
  policy: string;
  synsets: PosBreakdownPayload;
  synonyms: PosBreakdownPayload;
}
