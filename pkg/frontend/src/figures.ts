/**
 * Figure definitions over the sweep CSV: which column is x, which is y,
 * which carries the error bar, and how rows group into series.
 */

import { EmptySelectionError, Table, numeric, requireColumns } from "./csv.js";

export interface FigureSpec {
  figure: 3 | 4 | 5;
  xColumn: string;
  yColumn: string;
  ciColumn: string;
  xLabel: string;
  yLabel: string;
  title: string;
  /** y values are divided by this before plotting (bit/s -> Mbit/s) */
  yScale: number;
}

export interface Point {
  x: number;
  y: number;
  ci: number;
}

export interface Series {
  label: string;
  points: Point[];
}

const SCHEME_ORDER = ["benchmark_oma", "comp_only", "noma_only", "comp_noma_proposed"];

const SCHEME_LABELS: Record<string, string> = {
  benchmark_oma: "Benchmark OMA",
  comp_only: "CoMP only",
  noma_only: "NOMA only",
  comp_noma_proposed: "CoMP-NOMA proposed",
};

export function figureSpec(figure: number): FigureSpec {
  switch (figure) {
    case 3:
      return {
        figure: 3,
        xColumn: "lambda_u",
        yColumn: "mean_tput_bps",
        ciColumn: "tput_ci95_bps",
        xLabel: "user density (/km²)",
        yLabel: "mean user throughput (Mbit/s)",
        title: "Throughput vs user density",
        yScale: 1e6,
      };
    case 4:
      return {
        figure: 4,
        xColumn: "gamma_th_db",
        yColumn: "mean_tput_bps",
        ciColumn: "tput_ci95_bps",
        xLabel: "serving threshold γ_th (dB)",
        yLabel: "mean user throughput (Mbit/s)",
        title: "Throughput vs serving threshold",
        yScale: 1e6,
      };
    case 5:
      return {
        figure: 5,
        xColumn: "gamma_th_db",
        yColumn: "coverage",
        ciColumn: "coverage_ci95",
        xLabel: "serving threshold γ_th (dB)",
        yLabel: "coverage",
        title: "Coverage vs serving threshold",
        yScale: 1,
      };
    default:
      throw new Error(`unknown figure ${figure}; expected 3, 4 or 5`);
  }
}

function distinct(table: Table, column: string): string[] {
  return [...new Set(table.rows.map((r) => r[column]))];
}

/**
 * Group rows into one series per scheme (per scheme and BS density when the
 * CSV carries several densities). For the threshold figures the x axis must
 * not be a filter column, so lambda_u collapses are checked instead.
 */
export function buildSeries(table: Table, spec: FigureSpec): Series[] {
  requireColumns(table, [
    "scheme",
    "lambda_b",
    "lambda_u",
    "gamma_th_db",
    spec.yColumn,
    spec.ciColumn,
  ]);

  let rows = table.rows;
  if (spec.figure === 3) {
    // fix the threshold; a sweep CSV mixing thresholds cannot be a figure-3
    const thresholds = distinct(table, "gamma_th_db");
    if (thresholds.length > 1) {
      throw new Error(
        `figure 3 needs a single gamma_th_db, CSV has {${thresholds.join(", ")}}`,
      );
    }
  } else {
    const densities = distinct(table, "lambda_u");
    if (densities.length > 1) {
      throw new Error(
        `figure ${spec.figure} needs a single lambda_u, CSV has {${densities.join(", ")}}`,
      );
    }
  }
  if (rows.length === 0) {
    throw new EmptySelectionError("the sweep grid (CSV has no data rows)");
  }

  const bsDensities = distinct(table, "lambda_b").sort((a, b) => Number(a) - Number(b));
  const series: Series[] = [];
  for (const lambdaB of bsDensities) {
    for (const scheme of SCHEME_ORDER) {
      const selected = rows.filter((r) => r.scheme === scheme && r.lambda_b === lambdaB);
      if (selected.length === 0) {
        continue;
      }
      const points = selected
        .map((r) => ({
          x: numeric(r, spec.xColumn),
          y: numeric(r, spec.yColumn) / spec.yScale,
          ci: numeric(r, spec.ciColumn) / spec.yScale,
        }))
        .sort((a, b) => a.x - b.x);
      const label =
        bsDensities.length > 1
          ? `${SCHEME_LABELS[scheme]} (λ_b=${lambdaB})`
          : SCHEME_LABELS[scheme];
      series.push({ label, points });
    }
  }
  if (series.length === 0) {
    throw new EmptySelectionError("scheme in {" + SCHEME_ORDER.join(", ") + "}");
  }
  return series;
}
