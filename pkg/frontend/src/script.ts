/**
 * Scripted-mode replay store.
 *
 * The script file holds one entry per generation context — the tuple
 * (className, methodSignature, oracleType, tagText) — with the full oracle
 * token sequence. A select request is answered with the token at the position
 * equal to the number of lexical tokens already present in `partialText`, so
 * replay is stateless and independent of request ordering.
 */

import { readFileSync } from "node:fs";
import { countTokens } from "./tokens";

export interface ScriptEntry {
  className: string;
  methodSignature: string;
  oracleType: string;
  tagText?: string;
  tokens: string[];
}

export interface ContextKey {
  className: string;
  methodSignature: string;
  oracleType: string;
  tagText: string;
}

function keyOf(k: ContextKey): string {
  return JSON.stringify([k.className, k.methodSignature, k.oracleType, k.tagText]);
}

export class ScriptError extends Error {}

export class ScriptStore {
  private entries = new Map<string, string[]>();

  constructor(entries: ScriptEntry[]) {
    for (const e of entries) {
      this.entries.set(
        keyOf({
          className: e.className,
          methodSignature: e.methodSignature,
          oracleType: e.oracleType,
          tagText: e.tagText ?? "",
        }),
        [...e.tokens],
      );
    }
  }

  static fromFile(path: string): ScriptStore {
    const data = JSON.parse(readFileSync(path, "utf-8"));
    const entries = Array.isArray(data) ? data : data?.entries;
    if (!Array.isArray(entries)) {
      throw new ScriptError(`${path}: unrecognized script layout`);
    }
    return new ScriptStore(entries as ScriptEntry[]);
  }

  get size(): number {
    return this.entries.size;
  }

  /** True when the script has a (non-empty) oracle for this context. */
  hasOracle(key: ContextKey): boolean {
    const tokens = this.entries.get(keyOf(key));
    return tokens !== undefined && tokens.length > 0;
  }

  /** The scripted token following `partialText`, or an explanation of why
   * none exists. */
  nextToken(
    key: ContextKey,
    partialText: string,
  ): { token: string } | { error: string } {
    const tokens = this.entries.get(keyOf(key));
    if (tokens === undefined) {
      return { error: "no script entry for this context" };
    }
    const pos = countTokens(partialText);
    if (pos >= tokens.length) {
      return { error: `script exhausted at position ${pos}` };
    }
    return { token: tokens[pos] };
  }
}
