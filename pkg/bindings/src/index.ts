import { spawnSync } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

export type ScoreResult = {
    rnss: number,
    rms_precision: number,
    rms_recall: number,
    rms_f1: number,
};

export class TabevalError extends Error {}

// Override with TABEVAL_BIN when the CLI is not on PATH.
const BIN = process.env.TABEVAL_BIN ?? "tabeval";

function runCli(args: string[]): string {
    const result = spawnSync(BIN, args, { encoding: "utf-8" });
    if (result.error) {
        throw new TabevalError(`failed to spawn ${BIN}: ${result.error.message}`);
    }
    if (result.status !== 0) {
        throw new TabevalError(result.stderr.trim() || `${BIN} exited with ${result.status}`);
    }
    return result.stdout;
}

function withTempTables<T>(tables: string[], fn: (paths: string[]) => T): T {
    const dir = mkdtempSync(join(tmpdir(), "tabeval-"));
    try {
        const paths = tables.map((text, i) => {
            const path = join(dir, `table${i}.txt`);
            writeFileSync(path, text, "utf-8");
            return path;
        });
        return fn(paths);
    } finally {
        rmSync(dir, { recursive: true, force: true });
    }
}

/**
 * RNSS plus the RMS triple for two linearized tables. Pure pass-through:
 * the returned object is the CLI's own JSON, so values match it exactly.
 */
export function score(
    predTableText: string,
    goldTableText: string,
    tau = 0.5,
    theta = 0.5,
): ScoreResult {
    return withTempTables([predTableText, goldTableText], ([pred, gold]) =>
        JSON.parse(runCli([
            "score",
            "--pred", pred,
            "--gold", gold,
            "--tau", String(tau),
            "--theta", String(theta),
        ])) as ScoreResult);
}

/** Relaxed answer match: 5% numeric tolerance, normalized string equality otherwise. */
export function relaxedAccuracy(predAnswer: string, goldAnswer: string): boolean {
    const parsed = JSON.parse(runCli([
        "relaxed", "--pred", predAnswer, "--gold", goldAnswer,
    ])) as { correct: boolean };
    return parsed.correct;
}
