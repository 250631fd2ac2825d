import { describe, expect, it } from "vitest";
import { EmptySelectionError, MissingColumnError, parseCsv } from "../src/csv.js";
import { buildSeries, figureSpec } from "../src/figures.js";

const HEADER =
  "scheme,lambda_b,lambda_u,gamma_th_db,mean_tput_bps,tput_ci95_bps,coverage,coverage_ci95,iterations,seed";

function csvFor(points: Array<[string, number, number, number, number, number]>): string {
  const lines = [HEADER];
  for (const [scheme, lb, lu, gth, tput, cov] of points) {
    lines.push(`${scheme},${lb},${lu},${gth},${tput},120000,${cov},0.002,100,1`);
  }
  return lines.join("\n") + "\n";
}

const SCHEMES = ["benchmark_oma", "comp_only", "noma_only", "comp_noma_proposed"] as const;

function densitySweepCsv(): string {
  const rows: Array<[string, number, number, number, number, number]> = [];
  for (const scheme of SCHEMES) {
    for (const lu of [40, 90, 150]) {
      rows.push([scheme, 16, lu, -6.5, 6e6 - lu * 1e4, 0.9]);
    }
  }
  return csvFor(rows);
}

function thresholdSweepCsv(): string {
  const rows: Array<[string, number, number, number, number, number]> = [];
  for (const scheme of SCHEMES) {
    for (const gth of [-10, -5, 0]) {
      rows.push([scheme, 16, 50, gth, 4e6, 0.9 + gth / 200]);
    }
  }
  return csvFor(rows);
}

describe("figureSpec", () => {
  it("maps figures to axes", () => {
    expect(figureSpec(3).xColumn).toBe("lambda_u");
    expect(figureSpec(4).yColumn).toBe("mean_tput_bps");
    expect(figureSpec(5).yColumn).toBe("coverage");
    expect(figureSpec(5).ciColumn).toBe("coverage_ci95");
  });

  it("rejects unknown figures", () => {
    expect(() => figureSpec(7)).toThrow(/unknown figure 7/);
  });
});

describe("buildSeries", () => {
  it("one series per scheme, points sorted by x", () => {
    const series = buildSeries(parseCsv(densitySweepCsv()), figureSpec(3));
    expect(series).toHaveLength(4);
    expect(series.map((s) => s.label)).toContain("CoMP only");
    for (const s of series) {
      expect(s.points.map((p) => p.x)).toEqual([40, 90, 150]);
    }
  });

  it("splits series per BS density when several are present", () => {
    const rows: Array<[string, number, number, number, number, number]> = [];
    for (const lb of [16, 30]) {
      for (const scheme of SCHEMES) {
        rows.push([scheme, lb, 40, -6.5, 5e6, 0.9], [scheme, lb, 90, -6.5, 4e6, 0.9]);
      }
    }
    const series = buildSeries(parseCsv(csvFor(rows)), figureSpec(3));
    expect(series).toHaveLength(8);
    expect(series.some((s) => s.label.includes("λ_b=30"))).toBe(true);
  });

  it("threshold figures use gamma on x", () => {
    const series = buildSeries(parseCsv(thresholdSweepCsv()), figureSpec(5));
    expect(series[0].points.map((p) => p.x)).toEqual([-10, -5, 0]);
    expect(series[0].points[0].y).toBeCloseTo(0.85);
  });

  it("rejects a mixed-threshold CSV for figure 3", () => {
    expect(() => buildSeries(parseCsv(thresholdSweepCsv()), figureSpec(3))).toThrow(
      /single gamma_th_db/,
    );
  });

  it("rejects a mixed-density CSV for figures 4 and 5", () => {
    expect(() => buildSeries(parseCsv(densitySweepCsv()), figureSpec(4))).toThrow(
      /single lambda_u/,
    );
  });

  it("names a missing column", () => {
    const bad = densitySweepCsv().replace("coverage_ci95", "cov_ci");
    try {
      buildSeries(parseCsv(bad), figureSpec(5));
      expect.unreachable("should have thrown");
    } catch (err) {
      expect(err).toBeInstanceOf(MissingColumnError);
      expect((err as MissingColumnError).column).toBe("coverage_ci95");
    }
  });

  it("errors on data that filters to nothing", () => {
    const noData = HEADER + "\n";
    expect(() => buildSeries(parseCsv(noData), figureSpec(4))).toThrow(EmptySelectionError);
  });

  it("errors when no known scheme is present", () => {
    const alien = csvFor([["quantum_oma", 16, 50, -6.5, 1e6, 0.5]]);
    expect(() => buildSeries(parseCsv(alien), figureSpec(4))).toThrow(EmptySelectionError);
  });
});
