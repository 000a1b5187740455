/**
 * Discriminant map over (theta, P): a filled sign/magnitude heatmap with
 * the zero-level fold boundary drawn in black. Inside the black curve the
 * cubic has three real roots (bistable); outside, one.
 */

import { numericColumn, requireColumns, Table } from "../csv";
import { drawAxes, linearScale, splitOnJumps, Svg } from "../svg";

function divergingColor(t: number): string {
  // t in [-1, 1]: blue for negative, white near zero, orange for positive
  if (t < 0) {
    const u = Math.min(1, -t);
    const r = Math.round(247 - 180 * u);
    const g = Math.round(247 - 130 * u);
    const b = Math.round(250 - 60 * u);
    return `rgb(${r},${g},${b})`;
  }
  const u = Math.min(1, t);
  const r = Math.round(247 + 8 * u);
  const g = Math.round(247 - 120 * u);
  const b = Math.round(250 - 190 * u);
  return `rgb(${r},${g},${b})`;
}

export function renderContour(grid: Table, contour: Table): string {
  requireColumns(grid, ["theta", "P", "delta"]);
  requireColumns(contour, ["theta", "P"]);

  const theta = numericColumn(grid, "theta");
  const P = numericColumn(grid, "P");
  const delta = numericColumn(grid, "delta");
  const thetas = [...new Set(theta)].sort((a, b) => a - b);
  const Ps = [...new Set(P)].sort((a, b) => a - b);
  const ti = new Map(thetas.map((v, i) => [v, i]));
  const pj = new Map(Ps.map((v, j) => [v, j]));
  const D: number[][] = thetas.map(() => Ps.map(() => NaN));
  for (let r = 0; r < theta.length; r++) {
    D[ti.get(theta[r])!][pj.get(P[r])!] = delta[r];
  }

  const width = 760;
  const height = 620;
  const svg = new Svg(width, height);
  const sx = linearScale([thetas[0], thetas[thetas.length - 1]], [80, width - 40]);
  const sy = linearScale([Ps[0], Ps[Ps.length - 1]], [height - 70, 50]);

  // symmetric signed-log normalization keeps both lobes visible
  let magMax = 0;
  for (const row of D) {
    for (const v of row) {
      magMax = Math.max(magMax, Math.abs(v));
    }
  }
  const norm = (v: number) =>
    (Math.sign(v) * Math.log1p(Math.abs(v))) / Math.log1p(magMax || 1);

  const cellW = (sx(thetas[1]) - sx(thetas[0])) || 1;
  const cellH = Math.abs(sy(Ps[1]) - sy(Ps[0])) || 1;
  const levels = 13;
  for (let i = 0; i < thetas.length; i++) {
    // run-length merge of equal color bins along each row
    let j = 0;
    while (j < Ps.length) {
      const bin = Math.round(norm(D[i][j]) * ((levels - 1) / 2));
      let j2 = j;
      while (j2 + 1 < Ps.length &&
             Math.round(norm(D[i][j2 + 1]) * ((levels - 1) / 2)) === bin) {
        j2 += 1;
      }
      const x = sx(thetas[i]) - cellW / 2;
      const yTop = sy(Ps[j2]) - cellH / 2;
      const h = cellH * (j2 - j + 1);
      svg.rect(x, yTop, cellW, h,
        `fill="${divergingColor(bin / ((levels - 1) / 2))}" stroke="none"`);
      j = j2 + 1;
    }
  }

  drawAxes(svg, sx, sy, "temperature difference", "freshwater forcing");

  const cth = numericColumn(contour, "theta");
  const cP = numericColumn(contour, "P");
  if (cth.length === 0) {
    svg.text(width / 2, height / 2, "no fold region in range",
      'font-size="16" text-anchor="middle" fill="#444"');
  } else {
    const pts = cth.map((t, i) => [sx(t), sy(cP[i])] as [number, number]);
    const maxJump = 4 * Math.hypot(cellW, cellH);
    for (const seg of splitOnJumps(pts, maxJump)) {
      svg.path(seg, 'fill="none" stroke="black" stroke-width="2.2"');
    }
  }
  svg.text(20, 24, "cubic discriminant; zero level (black) bounds bistability",
    'font-size="12" fill="#111"');
  return svg.render();
}
