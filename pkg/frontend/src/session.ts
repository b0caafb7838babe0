/**
 * Login session: a verified token plus the user and role it maps to.
 */

import { ApiClient } from "./api.js";
import type { RoleName } from "./types.js";

const STORAGE_KEY = "lexibridge.session";

export interface Session {
  client: ApiClient;
  user: string;
  role: RoleName;
  baseUrl: string;
  token: string;
}

/** Verify a token against the server and build the session. */
export async function login(baseUrl: string, token: string): Promise<Session> {
  const client = new ApiClient(baseUrl, token);
  const me = await client.me();
  return { client, user: me.user, role: me.role, baseUrl, token };
}

/** Persist enough to restore the session after a reload. */
export function remember(session: Session): void {
  try {
    localStorage.setItem(
      STORAGE_KEY,
      JSON.stringify({ baseUrl: session.baseUrl, token: session.token }),
    );
  } catch {
    // Storage unavailable (private mode, test environment): just skip.
  }
}

export function forget(): void {
  try {
    localStorage.removeItem(STORAGE_KEY);
  } catch {
    // Ignore, same as remember().
  }
}

/** Restore a remembered session, re-verifying the token. */
export async function restore(): Promise<Session | null> {
  let raw: string | null = null;
  try {
    raw = localStorage.getItem(STORAGE_KEY);
  } catch {
    return null;
  }
  if (!raw) return null;
  try {
    const saved = JSON.parse(raw) as { baseUrl: string; token: string };
    return await login(saved.baseUrl, saved.token);
  } catch {
    forget();
    return null;
  }
}
