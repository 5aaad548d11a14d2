// Spawns the real backend over a freshly built fixture workspace. The
// frontend consumes the service exclusively, so its integration tests do
// the same.

import { execFileSync, spawn, ChildProcess } from "node:child_process";
import { mkdtempSync, openSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

const TINY_CONFIG = {
  seed: 3,
  degrees: [0, 1],
  train_size: 4,
  folds: 2,
  classes: [
    { label: "poisson", process: { kind: "poisson", params: { lam: 25 } }, count: 8 },
    { label: "matern", process: { kind: "matern", params: { kappa: 8, mu: 3 } }, count: 8 },
  ],
};

export interface Fixture {
  workspace: string;
  base: string;
  stop: () => void;
  cli: (...args: string[]) => string;
}

export function buildWorkspace(): string {
  const root = mkdtempSync(join(tmpdir(), "stablerank-ui-"));
  const configPath = join(root, "config.json");
  writeFileSync(configPath, JSON.stringify(TINY_CONFIG));
  const workspace = join(root, "ws");
  cli("pipeline", "--config", configPath, "--out", workspace);
  return workspace;
}

export function cli(...args: string[]): string {
  return execFileSync("python3", ["-m", "stablerank.cli", ...args], {
    encoding: "utf-8",
    cwd: tmpdir(),
  });
}

/**
 * Extract a sub-object from a raw JSON response and re-render it with the
 * backend's canonical writer. The raw text goes straight to the backend
 * parser so JavaScript float formatting never touches the bytes.
 */
export function canonicalSub(rawText: string, keys: string[]): string {
  const script =
    "import json,sys\n" +
    "from stablerank.serialize import canonical_json\n" +
    "obj = json.load(sys.stdin)\n" +
    "for key in json.loads(sys.argv[1]):\n" +
    "    obj = obj[key]\n" +
    "sys.stdout.write(canonical_json(obj))";
  return execFileSync("python3", ["-c", script, JSON.stringify(keys)], {
    input: rawText,
    encoding: "utf-8",
  });
}

export async function startService(): Promise<Fixture> {
  const workspace = buildWorkspace();
  const port = 8700 + Math.floor(Math.random() * 1000);
  const log = openSync(join(workspace, "..", "serve.log"), "w");
  const proc: ChildProcess = spawn(
    "python3",
    ["-m", "stablerank.cli", "serve", "--workspace", workspace, "--port", String(port)],
    { stdio: ["ignore", log, log] },
  );
  const base = `http://127.0.0.1:${port}`;
  for (let i = 0; i < 100; i++) {
    try {
      const resp = await fetch(`${base}/datasets`);
      if (resp.ok) {
        return { workspace, base, stop: () => proc.kill(), cli };
      }
    } catch {
      // not up yet
    }
    await new Promise((res) => setTimeout(res, 200));
  }
  proc.kill();
  throw new Error("service did not come up");
}
