/** JSONL transport: read requests from a stream, write one response line
 * each, until end-of-input. */

import { createInterface } from 'node:readline';
import type { Readable, Writable } from 'node:stream';
import { BridgeSession } from './server.js';

export async function runStdioServer(
  session: BridgeSession,
  input: Readable,
  output: Writable,
): Promise<void> {
  const rl = createInterface({ input, crlfDelay: Infinity });
  for await (const line of rl) {
    if (!line.trim()) {
      continue;
    }
    const response = await session.handleLine(line);
    output.write(JSON.stringify(response) + '\n');
  }
}
