/**
 * Reference HTTP backend for the oracle-generation wire protocol.
 *
 * Routes:
 *   GET  /v1/health    -> {"status": "ok"}
 *   POST /v1/evaluate  -> {"choice": <candidate>}   (generate-or-not decision)
 *   POST /v1/select    -> {"choice": <candidate>}   (next oracle token)
 *
 * The response choice is always byte-equal to one of the request's
 * candidates; requests that cannot be answered that way are rejected
 * (400 for malformed bodies, 422 when no candidate fits).
 */

import express, { Express, Request, Response } from "express";
import { CompletionProvider, ServerConfig, WireRequest, requestSchema } from "./schema";
import { ScriptStore } from "./script";

export { ScriptStore } from "./script";
export * from "./schema";

/**
 * Map a raw model completion onto the candidate list: pick the candidate
 * sharing the longest common prefix with the completion, ties broken by
 * candidate order. Returns null when no candidate matches even one byte.
 */
export function mapCompletion(
  completion: string,
  candidates: string[],
): string | null {
  let best: string | null = null;
  let bestLen = 0;
  for (const cand of candidates) {
    let l = 0;
    const max = Math.min(completion.length, cand.length);
    while (l < max && completion[l] === cand[l]) l++;
    if (l > bestLen) {
      best = cand;
      bestLen = l;
    }
  }
  return bestLen > 0 ? best : null;
}

function loadProvider(config: ServerConfig): CompletionProvider {
  if (config.completionProvider) return config.completionProvider;
  const module = config.adapterSettings?.module;
  if (typeof module === "string") {
    // eslint-disable-next-line @typescript-eslint/no-var-requires
    const mod = require(module);
    if (typeof mod.complete !== "function") {
      throw new Error(`adapter module ${module} does not export complete()`);
    }
    return mod.complete as CompletionProvider;
  }
  throw new Error("adapter mode requires a completion provider");
}

export function createApp(config: ServerConfig): Express {
  let script: ScriptStore | null = null;
  if (config.mode === "scripted") {
    if (!config.scriptFile) {
      throw new Error("scripted mode requires a script file");
    }
    script = ScriptStore.fromFile(config.scriptFile);
  }
  const provider = config.mode === "adapter" ? loadProvider(config) : null;

  const app = express();
  app.use(express.json({ limit: "4mb" }));

  app.get("/v1/health", (_req, res) => {
    res.json({ status: "ok" });
  });

  const handle =
    (route: "evaluate" | "select") =>
    async (req: Request, res: Response): Promise<void> => {
      const parsed = requestSchema.safeParse(req.body);
      if (!parsed.success) {
        res.status(400).json({ error: parsed.error.issues[0]?.message ?? "malformed request" });
        return;
      }
      const body: WireRequest = parsed.data;
      const { candidates, meta } = body;

      if (config.mode === "echo-first") {
        res.json({ choice: candidates[0] });
        return;
      }

      if (config.mode === "scripted") {
        const key = {
          className: meta.className,
          methodSignature: meta.methodSignature,
          oracleType: meta.oracleType,
          tagText: meta.tagText,
        };
        if (route === "evaluate") {
          // first arm = "generate", last arm = "decline"
          const choice = script!.hasOracle(key)
            ? candidates[0]
            : candidates[candidates.length - 1];
          res.json({ choice });
          return;
        }
        const next = script!.nextToken(key, meta.partialText);
        if ("error" in next) {
          res.status(422).json({ error: next.error });
          return;
        }
        if (!candidates.includes(next.token)) {
          res.status(422).json({
            error: `scripted token ${JSON.stringify(next.token)} is not a candidate`,
          });
          return;
        }
        res.json({ choice: next.token });
        return;
      }

      // adapter mode: render the prompt to the model, then map its
      // completion onto the candidate list — never forward it verbatim
      let completion: string;
      try {
        completion = await provider!(body.prompt, body);
      } catch (err) {
        res.status(502).json({ error: `completion provider failed: ${err}` });
        return;
      }
      const choice = mapCompletion(completion, candidates);
      if (choice === null) {
        res.status(422).json({
          error: "model completion matches no candidate prefix",
        });
        return;
      }
      res.json({ choice });
    };

  app.post("/v1/evaluate", handle("evaluate"));
  app.post("/v1/select", handle("select"));

  // express's JSON parser errors (bad syntax) -> 400 with {"error"}
  app.use(
    (err: Error, _req: Request, res: Response, _next: express.NextFunction) => {
      res.status(400).json({ error: err.message });
    },
  );

  return app;
}
