import { describe, expect, it } from 'vitest';
import { EchoModel } from '../src/models/echo.js';
import { BridgeSession } from '../src/server.js';

function session(): BridgeSession {
  return new BridgeSession(new EchoModel());
}

describe('BridgeSession', () => {
  it('echoes the request id', async () => {
    const response = await session().handleLine(
      '{"v":1,"id":"abc-1","kind":"paraphrase","payload":{"text":"hello"}}',
    );
    expect(response.id).toBe('abc-1');
    expect(response.ok).toBe(true);
  });

  it('paraphrase returns the input in echo mode', async () => {
    const response = await session().handleLine(
      '{"v":1,"id":"p1","kind":"paraphrase","payload":{"text":"same text"}}',
    );
    expect(response.ok && response.result.text).toBe('same text');
  });

  it('score returns typed token records', async () => {
    const response = await session().handleLine(
      '{"v":1,"id":"s1","kind":"score","payload":{"text":"one two three"}}',
    );
    expect(response.ok).toBe(true);
    if (response.ok) {
      const tokens = response.result.tokens as Array<Record<string, unknown>>;
      expect(tokens).toHaveLength(3);
      for (const t of tokens) {
        expect(typeof t.logprob).toBe('number');
        expect(t.logprob as number).toBeLessThanOrEqual(0);
        expect(Number.isInteger(t.rank)).toBe(true);
        expect((t.rank as number) >= 1).toBe(true);
        expect(typeof t.entropy).toBe('number');
      }
    }
  });

  it('synonyms returns at least one candidate', async () => {
    const response = await session().handleLine(
      '{"v":1,"id":"y1","kind":"synonyms","payload":{"word":"golden","context":"the golden lantern"}}',
    );
    expect(response.ok).toBe(true);
    if (response.ok) {
      expect((response.result.synonyms as string[]).length).toBeGreaterThan(0);
    }
  });

  it('generation is deterministic per seed', async () => {
    const s = session();
    const line =
      '{"v":1,"id":"g1","kind":"generate","payload":{"prompt":"a b c d","max_tokens":8,"seed":3}}';
    const a = await s.handleLine(line);
    const b = await s.handleLine(line);
    expect(a).toEqual({ ...b, id: a.id });
  });

  it('answers malformed lines with ok=false instead of crashing', async () => {
    const response = await session().handleLine('][ definitely not json');
    expect(response.ok).toBe(false);
    expect(response.id).toBeNull();
  });

  it('answers unknown kinds with ok=false', async () => {
    const response = await session().handleLine(
      '{"v":1,"id":"u1","kind":"telepathy","payload":{}}',
    );
    expect(response.ok).toBe(false);
    if (!response.ok) {
      expect(response.error).toMatch(/unknown request kind/);
    }
  });

  it('answers missing payload fields with ok=false', async () => {
    const response = await session().handleLine(
      '{"v":1,"id":"m1","kind":"score","payload":{}}',
    );
    expect(response.ok).toBe(false);
  });

  it('keeps a request log', async () => {
    const s = session();
    await s.handleLine('{"v":1,"id":"l1","kind":"synonyms","payload":{"word":"x"}}');
    await s.handleLine('garbage');
    expect(s.log).toEqual([
      { id: 'l1', kind: 'synonyms', ok: true },
      { id: null, kind: 'invalid', ok: false },
    ]);
  });
});
