/**
 * Bridge protocol v1 — newline-delimited JSON over stdin/stdout.
 *
 * Request:  {"v": 1, "id": string, "kind": Kind, "payload": {...}}
 * Response: {"v": 1, "id": string, "ok": true, "result": {...}}
 *           {"v": 1, "id": string, "ok": false, "error": string}
 *
 * Exactly one of result/error is present; unknown fields are ignored on
 * both sides. See ../PROTOCOL.md in the harness repo for payload schemas.
 */

export const PROTOCOL_VERSION = 1;

export const KINDS = [
  'score',
  'generate',
  'mask_fill',
  'paraphrase',
  'synonyms',
] as const;

export type Kind = (typeof KINDS)[number];

export interface BridgeRequest {
  v: number;
  id: string;
  kind: Kind;
  payload: Record<string, unknown>;
}

export interface TokenScore {
  token: string;
  logprob: number;
  rank: number;
  entropy: number;
}

export type BridgeResponse =
  | { v: number; id: string | null; ok: true; result: Record<string, unknown> }
  | { v: number; id: string | null; ok: false; error: string };

export function okResponse(
  id: string | null,
  result: Record<string, unknown>,
): BridgeResponse {
  return { v: PROTOCOL_VERSION, id, ok: true, result };
}

export function errorResponse(id: string | null, error: string): BridgeResponse {
  return { v: PROTOCOL_VERSION, id, ok: false, error };
}

/** Parse and structurally validate one request line. Throws on violation. */
export function parseRequest(line: string): BridgeRequest {
  let data: unknown;
  try {
    data = JSON.parse(line);
  } catch (err) {
    throw new Error(`malformed JSON: ${(err as Error).message}`);
  }
  if (typeof data !== 'object' || data === null || Array.isArray(data)) {
    throw new Error('request is not an object');
  }
  const obj = data as Record<string, unknown>;
  if (typeof obj.id !== 'string' || obj.id.length === 0) {
    throw new Error("request is missing a string 'id'");
  }
  if (typeof obj.kind !== 'string') {
    throw new Error("request is missing a string 'kind'");
  }
  const payload =
    typeof obj.payload === 'object' && obj.payload !== null
      ? (obj.payload as Record<string, unknown>)
      : {};
  return {
    v: typeof obj.v === 'number' ? obj.v : PROTOCOL_VERSION,
    id: obj.id,
    kind: obj.kind as Kind,
    payload,
  };
}

export function requireString(
  payload: Record<string, unknown>,
  field: string,
): string {
  const value = payload[field];
  if (typeof value !== 'string') {
    throw new Error(`payload field '${field}' must be a string`);
  }
  return value;
}

export function optionalNumber(
  payload: Record<string, unknown>,
  field: string,
  fallback: number,
): number {
  const value = payload[field];
  return typeof value === 'number' ? value : fallback;
}
