/**
 * Adapter for OpenAI-compatible completion APIs (llama.cpp server, vLLM,
 * text-generation-inference, Ollama's /v1 endpoint, ...). Scoring uses the
 * echo+logprobs trick; synonyms use a lettered-list completion prompt and a
 * grammar-tolerant parser. The HTTP layer is injected so the pure mappers
 * are unit-testable without a server.
 */

import type { TokenScore } from '../protocol.js';
import type {
  GenerateOptions,
  ModelAdapter,
  ParaphraseOptions,
} from './types.js';

export interface CompletionLogprobs {
  tokens: string[];
  token_logprobs: Array<number | null>;
  top_logprobs?: Array<Record<string, number> | null>;
}

export interface CompletionChoice {
  text: string;
  logprobs?: CompletionLogprobs | null;
}

export interface CompletionResponse {
  choices: CompletionChoice[];
}

export type CompletionFn = (
  body: Record<string, unknown>,
) => Promise<CompletionResponse>;

/**
 * Map a completion-API logprobs block to per-token scores.
 *
 * rank is 1 + the number of top alternatives strictly more likely than the
 * sampled token; entropy is estimated from the returned top-k alternatives
 * (renormalized), which lower-bounds the true value. Both degrade gracefully
 * when top_logprobs is absent.
 */
export function mapCompletionLogprobs(lp: CompletionLogprobs): TokenScore[] {
  const out: TokenScore[] = [];
  for (let i = 0; i < lp.tokens.length; i++) {
    const logprob = lp.token_logprobs[i];
    if (logprob === null || logprob === undefined) {
      continue; // first echoed token has no conditional probability
    }
    const top = lp.top_logprobs?.[i] ?? null;
    let rank = 1;
    let entropy = 0;
    if (top) {
      const values = Object.values(top);
      rank = 1 + values.filter((v) => v > logprob).length;
      const probs = values.map((v) => Math.exp(v));
      const total = probs.reduce((a, b) => a + b, 0);
      if (total > 0) {
        entropy = -probs.reduce((acc, p) => {
          const q = p / total;
          return acc + (q > 0 ? q * Math.log(q) : 0);
        }, 0);
      }
    }
    out.push({ token: lp.tokens[i], logprob, rank, entropy });
  }
  return out;
}

/** Prompt template for context-aware synonym candidates. */
export function synonymsPrompt(word: string, sentence: string): string {
  return `${sentence}\nSynonyms of the word "${word}" in the above sentence are:\na)`;
}

/**
 * Parse a lettered/numbered candidate list, e.g. "a) big b) large" or
 * "large\nb) huge". Falls back to comma splitting.
 */
export function parseSynonymList(completion: string, word: string): string[] {
  const text = completion.replace(/\r/gu, ' ');
  const pieces = text
    .split(/(?:^|\s)(?:[a-h]\)|[1-8][.)])\s*/u)
    .flatMap((piece) => piece.split(','))
    .map((piece) => piece.trim().split(/\s+/u)[0] ?? '')
    .map((piece) => piece.replace(/[^\p{L}\p{N}'-]/gu, ''))
    .filter((piece) => piece.length > 0)
    .map((piece) => piece.toLowerCase());
  const seen = new Set<string>();
  const out: string[] = [];
  for (const candidate of pieces) {
    if (candidate === word.toLowerCase() || seen.has(candidate)) {
      continue;
    }
    seen.add(candidate);
    out.push(candidate);
  }
  return out;
}

export interface OpenAiCompatConfig {
  baseUrl: string;
  model: string;
  apiKey?: string;
}

export function httpCompletionFn(config: OpenAiCompatConfig): CompletionFn {
  return async (body) => {
    const response = await fetch(`${config.baseUrl}/v1/completions`, {
      method: 'POST',
      headers: {
        'content-type': 'application/json',
        ...(config.apiKey ? { authorization: `Bearer ${config.apiKey}` } : {}),
      },
      body: JSON.stringify({ model: config.model, ...body }),
    });
    if (!response.ok) {
      throw new Error(`completion API ${response.status}: ${await response.text()}`);
    }
    return (await response.json()) as CompletionResponse;
  };
}

export class OpenAiCompatModel implements ModelAdapter {
  readonly name: string;

  constructor(
    private readonly complete: CompletionFn,
    name = 'openai-compat',
  ) {
    this.name = name;
  }

  async score(text: string): Promise<TokenScore[]> {
    const response = await this.complete({
      prompt: text,
      max_tokens: 0,
      echo: true,
      logprobs: 5,
      temperature: 0,
    });
    const lp = response.choices[0]?.logprobs;
    if (!lp) {
      throw new Error('backend returned no logprobs; is logprobs supported?');
    }
    return mapCompletionLogprobs(lp);
  }

  async generate(prompt: string, options: GenerateOptions): Promise<string> {
    const response = await this.complete({
      prompt,
      max_tokens: options.maxTokens,
      temperature: options.temperature,
      top_p: options.topP,
      seed: options.seed,
    });
    return response.choices[0]?.text ?? '';
  }

  async maskFill(
    text: string,
    spans: Array<[number, number]>,
    seed: number,
  ): Promise<string> {
    // left-to-right refill: complete each span from its left context and
    // keep exactly the span's token count
    const tokens = text.split(/\s+/u).filter((t) => t.length > 0);
    const sorted = [...spans].sort((a, b) => a[0] - b[0]);
    for (const [start, end] of sorted) {
      const left = tokens.slice(0, start).join(' ');
      const response = await this.complete({
        prompt: left,
        max_tokens: (end - start) * 4,
        temperature: 1.0,
        seed,
      });
      const filler = (response.choices[0]?.text ?? '')
        .split(/\s+/u)
        .filter((t) => t.length > 0)
        .slice(0, end - start);
      for (let i = start; i < end; i++) {
        tokens[i] = filler[i - start] ?? tokens[i];
      }
    }
    return tokens.join(' ');
  }

  async paraphrase(text: string, options: ParaphraseOptions): Promise<string> {
    const lex = options.lexDiversity ?? 40;
    const response = await this.complete({
      prompt: `Paraphrase the following text, rewording it freely:\n${text}\nParaphrase:`,
      max_tokens: Math.max(64, text.length),
      temperature: 0.5 + lex / 100,
      seed: options.seed,
    });
    return (response.choices[0]?.text ?? '').trim();
  }

  async synonyms(word: string, context: string): Promise<string[]> {
    const response = await this.complete({
      prompt: synonymsPrompt(word, context),
      max_tokens: 32,
      temperature: 0.3,
    });
    return parseSynonymList(response.choices[0]?.text ?? '', word);
  }
}
