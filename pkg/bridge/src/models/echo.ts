/**
 * Echo model: no weights, no downloads. Paraphrase and mask-fill return
 * their input, generation echoes a rotation of the prompt, and scores are a
 * deterministic function of the tokens. Used by CI and the conformance
 * suite, where only response shapes matter.
 */

import type { TokenScore } from '../protocol.js';
import type {
  GenerateOptions,
  ModelAdapter,
  ParaphraseOptions,
} from './types.js';

function fnv1a(text: string): number {
  let hash = 0x811c9dc5;
  for (let i = 0; i < text.length; i++) {
    hash ^= text.charCodeAt(i);
    hash = Math.imul(hash, 0x01000193) >>> 0;
  }
  return hash >>> 0;
}

export class EchoModel implements ModelAdapter {
  readonly name = 'echo';

  async score(text: string): Promise<TokenScore[]> {
    const tokens = text.split(/\s+/u).filter((t) => t.length > 0);
    return tokens.map((token) => {
      const h = fnv1a(token);
      return {
        token,
        logprob: -1 - (h % 97) / 10, // deterministic, always <= 0
        rank: 1 + (h % 50),
        entropy: (h % 31) / 10,
      };
    });
  }

  async generate(prompt: string, options: GenerateOptions): Promise<string> {
    const words = prompt.split(/\s+/u).filter((t) => t.length > 0);
    if (words.length === 0) {
      return 'echo';
    }
    const shift = options.seed % words.length;
    const rotated = [...words.slice(shift), ...words.slice(0, shift)];
    const n = Math.max(1, Math.min(options.maxTokens, rotated.length));
    return rotated.slice(0, n).join(' ');
  }

  async maskFill(
    text: string,
    _spans: Array<[number, number]>,
    _seed: number,
  ): Promise<string> {
    return text; // identity fill: spans "refilled" with their originals
  }

  async paraphrase(text: string, _options: ParaphraseOptions): Promise<string> {
    return text;
  }

  async synonyms(word: string, _context: string): Promise<string[]> {
    return [word];
  }
}
