/**
 * Thin typed client for the lexibridge HTTP API.
 *
 * Every call carries the bearer token. Mutating calls carry the record
 * revision the caller last saw (`expected_revision`); the server answers
 * 409 `stale_revision` when someone else moved first, and the caller is
 * expected to keep its unsaved state and let the user decide.
 */

import type {
  InventoryResponse,
  MeResponse,
  QueuePage,
  RecordView,
  StateName,
  TransitionRequest,
  ValidateResponse,
} from "./types.js";

/** A non-2xx reply, carrying the server's structured error body. */
export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
    message: string,
    public readonly findings: ValidateResponse["findings"] = [],
  ) {
    super(message);
    this.name = "ApiError";
  }

  get isStaleRevision(): boolean {
    return this.status === 409 && this.code === "stale_revision";
  }
}

interface ErrorBody {
  code?: string;
  message?: string;
  findings?: ValidateResponse["findings"];
  detail?: { code?: string; message?: string } | string;
}

/** Normalize the two error layouts the server uses into one ApiError. */
async function toApiError(response: Response): Promise<ApiError> {
  let body: ErrorBody = {};
  try {
    body = (await response.json()) as ErrorBody;
  } catch {
    // Non-JSON error body; fall through to the defaults below.
  }
  if (body.code) {
    return new ApiError(response.status, body.code, body.message ?? response.statusText, body.findings ?? []);
  }
  if (body.detail && typeof body.detail === "object") {
    return new ApiError(response.status, body.detail.code ?? "error", body.detail.message ?? response.statusText);
  }
  const detailText = typeof body.detail === "string" ? body.detail : response.statusText;
  return new ApiError(response.status, "error", detailText);
}

export interface QueueQuery {
  state?: StateName;
  pos?: string;
  page?: number;
  page_size?: number;
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly token: string,
    private readonly fetchImpl: typeof fetch = fetch,
  ) {}

  private async request<T>(path: string, init: RequestInit = {}): Promise<T> {
    const headers = new Headers(init.headers);
    headers.set("Authorization", `Bearer ${this.token}`);
    if (init.body !== undefined && !headers.has("Content-Type")) {
      headers.set("Content-Type", "application/json");
    }
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, { ...init, headers });
    if (!response.ok) {
      throw await toApiError(response);
    }
    return (await response.json()) as T;
  }

  me(): Promise<MeResponse> {
    return this.request<MeResponse>("/api/me");
  }

  queue(query: QueueQuery = {}): Promise<QueuePage> {
    const params = new URLSearchParams();
    if (query.state) params.set("state", query.state);
    if (query.pos) params.set("pos", query.pos);
    if (query.page) params.set("page", String(query.page));
    if (query.page_size) params.set("page_size", String(query.page_size));
    const suffix = params.size > 0 ? `?${params.toString()}` : "";
    return this.request<QueuePage>(`/api/synsets${suffix}`);
  }

  record(id: string): Promise<RecordView> {
    return this.request<RecordView>(`/api/synsets/${idToPath(id)}`);
  }

  transition(id: string, body: TransitionRequest): Promise<RecordView> {
    return this.request<RecordView>(`/api/synsets/${idToPath(id)}/transition`, {
      method: "POST",
      body: JSON.stringify(body),
    });
  }

  claim(id: string): Promise<unknown> {
    return this.request(`/api/synsets/${idToPath(id)}/claim`, { method: "POST" });
  }

  release(id: string): Promise<unknown> {
    return this.request(`/api/synsets/${idToPath(id)}/release`, { method: "POST" });
  }

  validate(id: string): Promise<ValidateResponse> {
    return this.request<ValidateResponse>(`/api/validate/${idToPath(id)}`);
  }

  inventory(policy?: string): Promise<InventoryResponse> {
    const suffix = policy ? `?policy=${encodeURIComponent(policy)}` : "";
    return this.request<InventoryResponse>(`/api/stats/inventory${suffix}`);
  }
}

/** "noun:02958343" → "noun/02958343" for the URL path. */
export function idToPath(id: string): string {
  const colon = id.indexOf(":");
  if (colon < 0) {
    throw new Error(`malformed synset id: ${id}`);
  }
  return `${id.slice(0, colon)}/${id.slice(colon + 1)}`;
}
