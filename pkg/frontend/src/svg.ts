/**
 * Hand-built SVG line charts: no DOM, no canvas, just deterministic strings.
 * Identical input data always yields byte-identical output.
 */

import { FigureSpec, Series } from "./figures.js";

const WIDTH = 860;
const HEIGHT = 560;
const MARGIN = { top: 48, right: 24, bottom: 96, left: 76 };
const PLOT_W = WIDTH - MARGIN.left - MARGIN.right;
const PLOT_H = HEIGHT - MARGIN.top - MARGIN.bottom;

// colorblind-safe palette, recycled when series outnumber it
const PALETTE = [
  "#0173b2", "#de8f05", "#029e73", "#d55e00",
  "#cc78bc", "#ca9161", "#56b4e9", "#949494",
];

const fmt = (value: number): string => {
  if (!Number.isFinite(value)) return "0";
  const rounded = Number(value.toFixed(2));
  return Object.is(rounded, -0) ? "0" : rounded.toString();
};

const fmtTick = (value: number): string => {
  const abs = Math.abs(value);
  if (abs >= 1000 || (abs > 0 && abs < 0.01)) return value.toExponential(1);
  return Number(value.toPrecision(4)).toString();
};

interface Scale {
  lo: number;
  hi: number;
  apply(v: number): number;
}

function niceTicks(lo: number, hi: number, count = 6): number[] {
  if (lo === hi) {
    return [lo];
  }
  const rawStep = (hi - lo) / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const norm = rawStep / mag;
  const step = (norm >= 5 ? 5 : norm >= 2 ? 2 : 1) * mag;
  const ticks: number[] = [];
  for (let t = Math.ceil(lo / step) * step; t <= hi + step * 1e-9; t += step) {
    ticks.push(Number(t.toPrecision(12)));
  }
  return ticks;
}

function makeScale(values: number[], lengthPx: number, flip: boolean, padFrac: number): Scale {
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (lo === hi) {
    lo -= 1;
    hi += 1;
  }
  const pad = (hi - lo) * padFrac;
  lo -= pad;
  hi += pad;
  return {
    lo,
    hi,
    apply: (v: number) => {
      const frac = (v - lo) / (hi - lo);
      return flip ? lengthPx * (1 - frac) : lengthPx * frac;
    },
  };
}

export function renderSvg(series: Series[], spec: FigureSpec): string {
  const xs = series.flatMap((s) => s.points.map((p) => p.x));
  const ys = series.flatMap((s) => s.points.flatMap((p) => [p.y - p.ci, p.y + p.ci]));
  ys.push(0); // anchor throughput/coverage axes at zero
  const xScale = makeScale(xs, PLOT_W, false, 0.04);
  const yScale = makeScale(ys, PLOT_H, true, 0.04);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
      `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`);
  parts.push(
    `<text x="${WIDTH / 2}" y="28" font-size="17" text-anchor="middle">${spec.title}</text>`,
  );

  const gx = (v: number) => MARGIN.left + xScale.apply(v);
  const gy = (v: number) => MARGIN.top + yScale.apply(v);

  // gridlines + ticks
  for (const t of niceTicks(yScale.lo, yScale.hi)) {
    const y = fmt(gy(t));
    parts.push(
      `<line x1="${MARGIN.left}" y1="${y}" x2="${MARGIN.left + PLOT_W}" y2="${y}" ` +
        `stroke="#dddddd" stroke-width="1"/>`,
      `<text x="${MARGIN.left - 8}" y="${y}" font-size="12" text-anchor="end" ` +
        `dominant-baseline="middle">${fmtTick(t)}</text>`,
    );
  }
  for (const t of niceTicks(xScale.lo, xScale.hi, 8)) {
    const x = fmt(gx(t));
    parts.push(
      `<line x1="${x}" y1="${MARGIN.top + PLOT_H}" x2="${x}" y2="${MARGIN.top + PLOT_H + 5}" ` +
        `stroke="#333333" stroke-width="1"/>`,
      `<text x="${x}" y="${MARGIN.top + PLOT_H + 20}" font-size="12" ` +
        `text-anchor="middle">${fmtTick(t)}</text>`,
    );
  }

  // frame + axis labels
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${PLOT_W}" height="${PLOT_H}" ` +
      `fill="none" stroke="#333333" stroke-width="1"/>`,
    `<text x="${MARGIN.left + PLOT_W / 2}" y="${HEIGHT - 58}" font-size="14" ` +
      `text-anchor="middle">${spec.xLabel}</text>`,
    `<text x="20" y="${MARGIN.top + PLOT_H / 2}" font-size="14" text-anchor="middle" ` +
      `transform="rotate(-90 20 ${MARGIN.top + PLOT_H / 2})">${spec.yLabel}</text>`,
  );

  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    // connecting line only when there is something to connect
    if (s.points.length > 1) {
      const path = s.points.map((p) => `${fmt(gx(p.x))},${fmt(gy(p.y))}`).join(" ");
      parts.push(
        `<polyline points="${path}" fill="none" stroke="${color}" stroke-width="2"/>`,
      );
    }
    for (const p of s.points) {
      const x = fmt(gx(p.x));
      if (p.ci > 0) {
        const yLo = fmt(gy(p.y - p.ci));
        const yHi = fmt(gy(p.y + p.ci));
        parts.push(
          `<line x1="${x}" y1="${yLo}" x2="${x}" y2="${yHi}" stroke="${color}" stroke-width="1.2"/>`,
          `<line x1="${fmt(gx(p.x) - 4)}" y1="${yLo}" x2="${fmt(gx(p.x) + 4)}" y2="${yLo}" ` +
            `stroke="${color}" stroke-width="1.2"/>`,
          `<line x1="${fmt(gx(p.x) - 4)}" y1="${yHi}" x2="${fmt(gx(p.x) + 4)}" y2="${yHi}" ` +
            `stroke="${color}" stroke-width="1.2"/>`,
        );
      }
      parts.push(`<circle cx="${x}" cy="${fmt(gy(p.y))}" r="3.5" fill="${color}"/>`);
    }
  });

  // legend below the plot, two columns
  series.forEach((s, i) => {
    const color = PALETTE[i % PALETTE.length];
    const col = i % 2;
    const rowIdx = Math.floor(i / 2);
    const x = MARGIN.left + col * (PLOT_W / 2);
    const y = HEIGHT - 40 + rowIdx * 18;
    parts.push(
      `<line x1="${x}" y1="${y - 4}" x2="${x + 24}" y2="${y - 4}" stroke="${color}" stroke-width="2"/>`,
      `<circle cx="${x + 12}" cy="${y - 4}" r="3.5" fill="${color}"/>`,
      `<text x="${x + 30}" y="${y}" font-size="12">${s.label}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
