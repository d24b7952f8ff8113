#!/usr/bin/env node
/**
 * Start the reference model server.
 *
 * Usage:
 *   node dist/cli.js --mode scripted --script entries.json [--port 0]
 *   node dist/cli.js --mode echo-first [--port 8080]
 *   node dist/cli.js --mode adapter --adapter-module ./provider.js
 *
 * Prints "listening on <port>" once bound (port 0 picks a free port).
 */

import { parseArgs } from "node:util";
import { AddressInfo } from "node:net";
import { ServerConfig, ServerMode, createApp } from "./server";

function fail(message: string): never {
  process.stderr.write(`error: ${message}\n`);
  process.exit(2);
}

export function configFromArgv(argv: string[]): ServerConfig {
  const { values } = parseArgs({
    args: argv,
    options: {
      port: { type: "string", default: "0" },
      mode: { type: "string", default: "scripted" },
      script: { type: "string" },
      "adapter-module": { type: "string" },
    },
  });
  const mode = values.mode as string;
  if (!["scripted", "echo-first", "adapter"].includes(mode)) {
    fail(`unknown mode ${mode}; expected scripted, echo-first, or adapter`);
  }
  const port = Number(values.port);
  if (!Number.isInteger(port) || port < 0 || port > 65535) {
    fail(`invalid port ${values.port}`);
  }
  if (mode === "scripted" && !values.script) {
    fail("scripted mode requires --script <file>");
  }
  if (mode === "adapter" && !values["adapter-module"]) {
    fail("adapter mode requires --adapter-module <js file>");
  }
  return {
    port,
    mode: mode as ServerMode,
    scriptFile: values.script,
    adapterSettings: values["adapter-module"]
      ? { module: values["adapter-module"] }
      : undefined,
  };
}

function main(): void {
  const config = configFromArgv(process.argv.slice(2));
  let app;
  try {
    app = createApp(config);
  } catch (err) {
    fail(err instanceof Error ? err.message : String(err));
  }
  const server = app.listen(config.port, () => {
    const addr = server.address() as AddressInfo;
    process.stdout.write(`listening on ${addr.port}\n`);
  });
  for (const sig of ["SIGINT", "SIGTERM"] as const) {
    process.on(sig, () => server.close(() => process.exit(0)));
  }
}

if (require.main === module) {
  main();
}
