import { spawnSync } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, describe, expect, it } from "vitest";

import { TabevalError, relaxedAccuracy, score } from "../src/index";

const BIN = process.env.TABEVAL_BIN ?? "tabeval";
const dir = mkdtempSync(join(tmpdir(), "tabeval-parity-"));
afterAll(() => rmSync(dir, { recursive: true, force: true }));

function cliScore(pred: string, gold: string): string {
    const predPath = join(dir, "pred.txt");
    const goldPath = join(dir, "gold.txt");
    writeFileSync(predPath, pred, "utf-8");
    writeFileSync(goldPath, gold, "utf-8");
    const result = spawnSync(
        BIN,
        ["score", "--pred", predPath, "--gold", goldPath, "--tau", "0.5", "--theta", "0.5"],
        { encoding: "utf-8" },
    );
    expect(result.status).toBe(0);
    // Canonical rendering: both sides go through JSON.stringify so the
    // comparison is byte-exact on the parsed doubles, not on Python's
    // incidental "1.0" vs JS's "1" formatting.
    return JSON.stringify(JSON.parse(result.stdout));
}

const GOLD = "year | cats | dogs\n2019 | 10 | 12\n2020 | 14 | 9\n2021 | 17 | 11";

// 20 fixed pairs: identity, transposition, value drift, header noise,
// missing/extra rows, text cells, currency/percent formatting, degenerates.
const PAIRS: Array<[string, string]> = [
    [GOLD, GOLD],
    ["year | 2019 | 2020 | 2021\ncats | 10 | 14 | 17\ndogs | 12 | 9 | 11", GOLD],
    ["year | cats | dogs\n2019 | 10.4 | 12\n2020 | 14 | 9\n2021 | 17 | 11", GOLD],
    ["year | cats | dogs\n2019 | 11 | 13\n2020 | 15 | 10\n2021 | 18 | 12", GOLD],
    ["yr | cat | dog\n2019 | 10 | 12\n2020 | 14 | 9\n2021 | 17 | 11", GOLD],
    ["year | cats | dogs\n2019 | 10 | 12\n2020 | 14 | 9", GOLD],
    [GOLD + "\n2022 | 20 | 15", GOLD],
    ["year | cats | dogs\n2021 | 17 | 11\n2019 | 10 | 12\n2020 | 14 | 9", GOLD],
    ["year | dogs | cats\n2019 | 12 | 10\n2020 | 9 | 14\n2021 | 11 | 17", GOLD],
    ["year | cats | dogs\n2019 | $10 | 12%\n2020 | 14 | 9\n2021 | 17.0 | 11", GOLD],
    ["totally | different\nwords | here", GOLD],
    ["year | cats | dogs\n2019 | ten | twelve\n2020 | 14 | 9\n2021 | 17 | 11", GOLD],
    ["h | v\na | 1", "h | v\na | 1"],
    ["h | v\na | 1", "h | v\na | 2"],
    ["h | v\na | 100\nb | 50", "h | v\na | 100"],
    ["party | seats\nreds | 120\nblues | 80", "party | seats\nblues | 80\nreds | 121"],
    ["a | b\nc | d", "e | f\ng | h"],
    ["x | 1,200 | 3\ny | 4 | 5", "x | 1200 | 3\ny | 4 | 5"],
    ["m | -2.5 | 0\nn | 1e2 | 7", "m | -2.5 | 0\nn | 100 | 7"],
    ["k | a | b | c\nr1 | 1 | 2 | 3\nr2 | 4 | 5 | 6", "k | a | b\nr1 | 1 | 2\nr2 | 4 | 5"],
];

describe("score parity with the CLI", () => {
    it.each(PAIRS.map((pair, i) => [i, pair] as const))(
        "pair %d matches byte-for-byte",
        (_i, [pred, gold]) => {
            expect(JSON.stringify(score(pred, gold))).toBe(cliScore(pred, gold));
        },
    );

    it("identical tables score 1.0 everywhere", () => {
        expect(score(GOLD, GOLD)).toEqual({
            rnss: 1.0, rms_precision: 1.0, rms_recall: 1.0, rms_f1: 1.0,
        });
    });

    it("propagates table parse errors with the CLI's message", () => {
        expect(() => score("  \n ", GOLD)).toThrow(TabevalError);
        expect(() => score("  \n ", GOLD)).toThrow(/no non-blank line/);
    });
});

describe("relaxedAccuracy", () => {
    it("accepts answers within the 5% tolerance", () => {
        expect(relaxedAccuracy("1.06", "1.06")).toBe(true);
        expect(relaxedAccuracy("34", "33.6")).toBe(true);
    });

    it("rejects answers outside the tolerance", () => {
        expect(relaxedAccuracy("10.6", "10")).toBe(false);
    });

    it("normalizes textual answers", () => {
        expect(relaxedAccuracy("republicans ", "Republicans")).toBe(true);
    });
});
