#!/usr/bin/env node
/**
 * Entry point.
 *
 *   node dist/main.js --echo
 *   node dist/main.js --api http://localhost:8000 --model llama-3-8b
 *
 * The echo profile needs no model and is what CI and the conformance suite
 * run. Real-model profiles talk to any OpenAI-compatible completion API;
 * set BRIDGE_API_KEY if the endpoint needs auth.
 */

import process from 'node:process';
import { EchoModel } from './models/echo.js';
import { OpenAiCompatModel, httpCompletionFn } from './models/openaiCompat.js';
import type { ModelAdapter } from './models/types.js';
import { BridgeSession } from './server.js';
import { runStdioServer } from './stdio.js';

function buildModel(argv: string[]): ModelAdapter {
  if (argv.includes('--echo')) {
    return new EchoModel();
  }
  const apiIdx = argv.indexOf('--api');
  const modelIdx = argv.indexOf('--model');
  if (apiIdx !== -1 && apiIdx + 1 < argv.length) {
    const baseUrl = argv[apiIdx + 1];
    const model =
      modelIdx !== -1 && modelIdx + 1 < argv.length ? argv[modelIdx + 1] : '';
    return new OpenAiCompatModel(
      httpCompletionFn({ baseUrl, model, apiKey: process.env.BRIDGE_API_KEY }),
    );
  }
  process.stderr.write(
    'usage: main.js --echo | --api <base-url> [--model <name>]\n',
  );
  process.exit(1);
}

const session = new BridgeSession(buildModel(process.argv.slice(2)));
runStdioServer(session, process.stdin, process.stdout).catch((err) => {
  process.stderr.write(`fatal: ${err}\n`);
  process.exit(1);
});
