import type { TokenScore } from '../protocol.js';

export interface GenerateOptions {
  maxTokens: number;
  temperature: number;
  topP: number;
  seed: number;
  minTokens: number;
}

export interface ParaphraseOptions {
  lexDiversity: number | null;
  orderDiversity: number | null;
  seed: number;
}

/** What a backing model must provide; the server maps protocol kinds 1:1. */
export interface ModelAdapter {
  readonly name: string;
  score(text: string): Promise<TokenScore[]>;
  generate(prompt: string, options: GenerateOptions): Promise<string>;
  maskFill(text: string, spans: Array<[number, number]>, seed: number): Promise<string>;
  paraphrase(text: string, options: ParaphraseOptions): Promise<string>;
  synonyms(word: string, context: string): Promise<string[]>;
}
