import { describe, expect, it } from 'vitest';
import {
  errorResponse,
  okResponse,
  parseRequest,
  PROTOCOL_VERSION,
} from '../src/protocol.js';

describe('parseRequest', () => {
  it('parses a well-formed request', () => {
    const req = parseRequest(
      '{"v": 1, "id": "r1", "kind": "score", "payload": {"text": "a b"}}',
    );
    expect(req.id).toBe('r1');
    expect(req.kind).toBe('score');
    expect(req.payload.text).toBe('a b');
  });

  it('ignores unknown fields (forward compatibility)', () => {
    const req = parseRequest(
      '{"v": 1, "id": "r2", "kind": "generate", "payload": {}, "future": 9}',
    );
    expect(req.id).toBe('r2');
  });

  it('rejects non-JSON', () => {
    expect(() => parseRequest('not json')).toThrow(/malformed JSON/);
  });

  it('rejects a missing id', () => {
    expect(() => parseRequest('{"kind": "score", "payload": {}}')).toThrow(
      /id/,
    );
  });

  it('defaults a missing payload to an empty object', () => {
    const req = parseRequest('{"id": "r3", "kind": "synonyms"}');
    expect(req.payload).toEqual({});
  });
});

describe('response constructors', () => {
  it('carry exactly one of result/error', () => {
    const ok = okResponse('a', { text: 'x' });
    expect(ok.ok).toBe(true);
    expect(ok.v).toBe(PROTOCOL_VERSION);
    expect('error' in ok).toBe(false);

    const err = errorResponse('a', 'boom');
    expect(err.ok).toBe(false);
    expect('result' in err).toBe(false);
    expect(err.error).toBe('boom');
  });
});
