// Client-side forest plot: SVG generated from the API's forest rows.
// Study rows draw a weight-scaled square with its CI segment; pooled rows
// draw a diamond spanning the CI. No plotting library involved.

import { ForestRow } from "./types.js";

export interface ForestOptions {
  width?: number;
  rowHeight?: number;
  labelWidth?: number;
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function renderForestSvg(rows: ForestRow[], options: ForestOptions = {}): string {
  const width = options.width ?? 640;
  const rowHeight = options.rowHeight ?? 28;
  const labelWidth = options.labelWidth ?? 170;
  const plotLeft = labelWidth + 10;
  const plotRight = width - 16;
  const height = rowHeight * (rows.length + 1) + 24;

  const lows = rows.map((r) => r.ci_low);
  const highs = rows.map((r) => r.ci_high);
  let lo = Math.min(0, ...lows);
  let hi = Math.max(0, ...highs);
  if (lo === hi) {
    lo -= 1;
    hi += 1;
  }
  const pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
  const x = (v: number) => plotLeft + ((v - lo) / (hi - lo)) * (plotRight - plotLeft);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}" role="img" data-rows="${rows.length}">`,
  );
  const axisY = rowHeight * rows.length + 12;
  parts.push(
    `<line x1="${x(0)}" y1="6" x2="${x(0)}" y2="${axisY}" ` +
    'stroke="#888" stroke-dasharray="4 3"/>',
  );
  rows.forEach((row, i) => {
    const cy = rowHeight * (i + 0.5) + 6;
    const isPooled = row.id.startsWith("pooled");
    parts.push(
      `<text x="8" y="${cy + 4}" font-size="12" ` +
      `font-weight="${isPooled ? "bold" : "normal"}">${esc(row.id)}</text>`,
    );
    if (isPooled) {
      const cx = x(row.md);
      const left = x(row.ci_low);
      const right = x(row.ci_high);
      const h = 8;
      parts.push(
        `<polygon data-kind="pooled" data-model="${esc(row.model)}" ` +
        `points="${left},${cy} ${cx},${cy - h} ${right},${cy} ${cx},${cy + h}" ` +
        'fill="#1d4e89"/>',
      );
    } else {
      const size = 4 + Math.sqrt(Math.max(row.weight_pct, 0)) * 1.6;
      parts.push(
        `<line data-kind="ci" x1="${x(row.ci_low)}" y1="${cy}" ` +
        `x2="${x(row.ci_high)}" y2="${cy}" stroke="#333"/>`,
      );
      parts.push(
        `<rect data-kind="study" x="${x(row.md) - size / 2}" y="${cy - size / 2}" ` +
        `width="${size}" height="${size}" fill="#4a7c59"/>`,
      );
    }
  });
  const ticks = 5;
  for (let i = 0; i <= ticks; i += 1) {
    const v = lo + ((hi - lo) * i) / ticks;
    parts.push(
      `<text x="${x(v)}" y="${axisY + 12}" font-size="10" text-anchor="middle" ` +
      `fill="#555">${v.toFixed(1)}</text>`,
    );
  }
  parts.push("</svg>");
  return parts.join("");
}
