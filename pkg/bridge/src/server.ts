/**
 * BridgeSession: maps protocol requests onto a model adapter. One session is
 * strictly serial (the harness opens one process per concurrent stream); a
 * request log is kept for debugging and conformance work.
 */

import {
  BridgeRequest,
  BridgeResponse,
  errorResponse,
  okResponse,
  optionalNumber,
  parseRequest,
  requireString,
} from './protocol.js';
import type { ModelAdapter } from './models/types.js';

export interface LogEntry {
  id: string | null;
  kind: string;
  ok: boolean;
}

export class BridgeSession {
  readonly log: LogEntry[] = [];

  constructor(private readonly model: ModelAdapter) {}

  /** Answer one raw input line; never throws. */
  async handleLine(line: string): Promise<BridgeResponse> {
    let request: BridgeRequest;
    try {
      request = parseRequest(line);
    } catch (err) {
      const response = errorResponse(null, (err as Error).message);
      this.log.push({ id: null, kind: 'invalid', ok: false });
      return response;
    }
    const response = await this.handleRequest(request);
    this.log.push({ id: request.id, kind: request.kind, ok: response.ok });
    return response;
  }

  async handleRequest(request: BridgeRequest): Promise<BridgeResponse> {
    try {
      const result = await this.dispatch(request);
      return okResponse(request.id, result);
    } catch (err) {
      return errorResponse(request.id, (err as Error).message);
    }
  }

  private async dispatch(
    request: BridgeRequest,
  ): Promise<Record<string, unknown>> {
    const { payload } = request;
    switch (request.kind) {
      case 'score': {
        const tokens = await this.model.score(requireString(payload, 'text'));
        return { tokens };
      }
      case 'generate': {
        const text = await this.model.generate(
          requireString(payload, 'prompt'),
          {
            maxTokens: optionalNumber(payload, 'max_tokens', 120),
            temperature: optionalNumber(payload, 'temperature', 1.0),
            topP: optionalNumber(payload, 'top_p', 0.96),
            seed: optionalNumber(payload, 'seed', 0),
            minTokens: optionalNumber(payload, 'min_tokens', 0),
          },
        );
        return { text };
      }
      case 'mask_fill': {
        const spans = parseSpans(payload.spans);
        const text = await this.model.maskFill(
          requireString(payload, 'text'),
          spans,
          optionalNumber(payload, 'seed', 0),
        );
        return { text };
      }
      case 'paraphrase': {
        const text = await this.model.paraphrase(
          requireString(payload, 'text'),
          {
            lexDiversity: numberOrNull(payload.lex_diversity),
            orderDiversity: numberOrNull(payload.order_diversity),
            seed: optionalNumber(payload, 'seed', 0),
          },
        );
        return { text };
      }
      case 'synonyms': {
        const synonyms = await this.model.synonyms(
          requireString(payload, 'word'),
          typeof payload.context === 'string' ? payload.context : '',
        );
        return { synonyms };
      }
      default:
        throw new Error(`unknown request kind '${String(request.kind)}'`);
    }
  }
}

function numberOrNull(value: unknown): number | null {
  return typeof value === 'number' ? value : null;
}

function parseSpans(value: unknown): Array<[number, number]> {
  if (!Array.isArray(value)) {
    throw new Error("payload field 'spans' must be an array of [start, end]");
  }
  return value.map((span) => {
    if (
      !Array.isArray(span) ||
      span.length !== 2 ||
      typeof span[0] !== 'number' ||
      typeof span[1] !== 'number'
    ) {
      throw new Error(`bad span ${JSON.stringify(span)}`);
    }
    return [span[0], span[1]];
  });
}
