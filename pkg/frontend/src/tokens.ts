/**
 * Lexer for the oracle expression language, mirroring the Python
 * implementation token for token. The server only needs token *counts* (to
 * find the current position inside a scripted token sequence), but keeping
 * the full classification makes the negative-literal rule identical.
 */

export type TokenKind =
  | "identifier"
  | "member-name"
  | "reserved"
  | "operator"
  | "punctuation"
  | "literal";

export interface LexToken {
  text: string;
  kind: TokenKind;
}

const RESERVED = new Set([
  "true",
  "false",
  "null",
  "this",
  "methodResultID",
  "jdVar",
]);
const MULTI_OPERATORS = ["==", "!=", "<=", ">=", "&&", "||", "->"];
const SINGLE_OPERATORS = new Set(["<", ">", "+", "-", "*", "/", "%", "?", ":"]);
const WORD_OPERATORS = new Set(["instanceof"]);
const PUNCTUATION = new Set(["(", ")", ".", ",", ";"]);

const NAME_START = /[A-Za-z_$]/;
const NAME_CHAR = /[A-Za-z0-9_$]/;

export class LexicalError extends Error {
  constructor(message: string, public readonly offset: number) {
    super(`${message} at offset ${offset}`);
  }
}

function endsOperand(tok: LexToken | undefined): boolean {
  if (tok === undefined) return false;
  if (
    tok.kind === "identifier" ||
    tok.kind === "member-name" ||
    tok.kind === "literal" ||
    tok.kind === "reserved"
  ) {
    return true;
  }
  return tok.kind === "punctuation" && tok.text === ")";
}

function matchNumber(text: string, i: number): number {
  // digits, optional fraction, optional numeric suffix
  let j = i;
  while (j < text.length && text[j] >= "0" && text[j] <= "9") j++;
  if (j === i) return i;
  if (j + 1 < text.length && text[j] === "." && /\d/.test(text[j + 1])) {
    j++;
    while (j < text.length && text[j] >= "0" && text[j] <= "9") j++;
  }
  if (j < text.length && "fFdDlL".includes(text[j])) j++;
  return j;
}

export function tokenize(text: string): LexToken[] {
  const tokens: LexToken[] = [];
  let i = 0;
  const n = text.length;
  while (i < n) {
    const c = text[i];
    if (/\s/.test(c)) {
      i++;
      continue;
    }
    const rest = text.slice(i, i + 2);
    const multi = MULTI_OPERATORS.find((op) => rest.startsWith(op));
    if (
      multi === undefined &&
      c === "-" &&
      i + 1 < n &&
      /\d/.test(text[i + 1]) &&
      !endsOperand(tokens[tokens.length - 1])
    ) {
      const end = matchNumber(text, i + 1);
      tokens.push({ text: text.slice(i, end), kind: "literal" });
      i = end;
      continue;
    }
    if (multi !== undefined) {
      tokens.push({ text: multi, kind: "operator" });
      i += multi.length;
      continue;
    }
    if (/\d/.test(c)) {
      const end = matchNumber(text, i);
      tokens.push({ text: text.slice(i, end), kind: "literal" });
      i = end;
      continue;
    }
    if (c === '"' || c === "'") {
      let j = i + 1;
      while (j < n && text[j] !== c) j += text[j] === "\\" ? 2 : 1;
      if (j >= n) {
        throw new LexicalError(
          c === '"' ? "unterminated string literal" : "unterminated char literal",
          i,
        );
      }
      tokens.push({ text: text.slice(i, j + 1), kind: "literal" });
      i = j + 1;
      continue;
    }
    if (NAME_START.test(c)) {
      let j = i + 1;
      while (j < n && NAME_CHAR.test(text[j])) j++;
      const word = text.slice(i, j);
      if (WORD_OPERATORS.has(word)) {
        tokens.push({ text: word, kind: "operator" });
      } else if (RESERVED.has(word)) {
        tokens.push({ text: word, kind: "reserved" });
      } else {
        const prev = tokens[tokens.length - 1];
        const afterDot =
          prev !== undefined && prev.kind === "punctuation" && prev.text === ".";
        tokens.push({
          text: word,
          kind: afterDot ? "member-name" : "identifier",
        });
      }
      i = j;
      continue;
    }
    if (PUNCTUATION.has(c)) {
      tokens.push({ text: c, kind: "punctuation" });
      i++;
      continue;
    }
    if (SINGLE_OPERATORS.has(c)) {
      tokens.push({ text: c, kind: "operator" });
      i++;
      continue;
    }
    throw new LexicalError(`unrecognized character ${JSON.stringify(c)}`, i);
  }
  return tokens;
}

/** Number of lexical tokens in a partial-oracle text. */
export function countTokens(text: string): number {
  return tokenize(text).length;
}
