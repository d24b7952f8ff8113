/** Request validation and server configuration types. */

import { z } from "zod";

/**
 * Body accepted by POST /v1/evaluate and POST /v1/select.
 *
 * `meta` mirrors the structured half of the client's prompt bundle; only the
 * fields the server keys on are validated, everything else passes through.
 */
export const requestSchema = z.object({
  prompt: z.string(),
  candidates: z.array(z.string().min(1)).min(1),
  meta: z
    .object({
      className: z.string().default(""),
      methodSignature: z.string().default(""),
      oracleType: z.string().default(""),
      tagText: z.string().default(""),
      partialText: z.string().default(""),
    })
    .passthrough()
    .default({}),
});

export type WireRequest = z.infer<typeof requestSchema>;

export type ServerMode = "scripted" | "echo-first" | "adapter";

/**
 * Completion provider used in adapter mode: renders the received prompt to a
 * hosted model and returns its raw completion text. The server then maps that
 * completion onto the candidate list.
 */
export type CompletionProvider = (
  prompt: string,
  request: WireRequest,
) => string | Promise<string>;

export interface ServerConfig {
  port: number;
  mode: ServerMode;
  /** Script file path; required in scripted mode. */
  scriptFile?: string;
  /** Opaque adapter settings; `module` names a JS file exporting `complete`. */
  adapterSettings?: Record<string, unknown>;
  /** Injectable provider (takes precedence over adapterSettings.module). */
  completionProvider?: CompletionProvider;
}
