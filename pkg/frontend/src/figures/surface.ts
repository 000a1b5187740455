/**
 * Potential landscape surface over (state, control parameter) with the
 * equilibrium branches drawn on top: stable solid, unstable dashed.
 */

import { numericColumn, requireColumns, stringColumn, Table } from "../csv";
import { makeProjector } from "../project3d";
import { fmt, splitOnJumps, STABLE_STYLE, Svg, UNSTABLE_STYLE } from "../svg";

interface GridData {
  coords: number[];
  params: number[];
  V: number[][]; // [coord][param]
  flags: string[][];
}

export function reshapeLandscape(table: Table): GridData {
  requireColumns(table, ["coord", "param", "V", "branch_flag"]);
  const coord = numericColumn(table, "coord");
  const param = numericColumn(table, "param");
  const V = numericColumn(table, "V");
  const flag = stringColumn(table, "branch_flag");
  const coords = [...new Set(coord)].sort((a, b) => a - b);
  const params = [...new Set(param)].sort((a, b) => a - b);
  const ci = new Map(coords.map((c, i) => [c, i]));
  const pj = new Map(params.map((p, j) => [p, j]));
  const grid: number[][] = coords.map(() => params.map(() => NaN));
  const flags: string[][] = coords.map(() => params.map(() => "none"));
  for (let r = 0; r < coord.length; r++) {
    const i = ci.get(coord[r])!;
    const j = pj.get(param[r])!;
    grid[i][j] = V[r];
    flags[i][j] = flag[r];
  }
  return { coords, params, V: grid, flags };
}

function heightColor(t: number): string {
  // light blue (low) to warm gray (high)
  const r = Math.round(150 + 90 * t);
  const g = Math.round(175 + 55 * t);
  const b = Math.round(235 - 60 * t);
  return `rgb(${r},${g},${b})`;
}

export function renderSurface(table: Table, paramLabel: string): string {
  const data = reshapeLandscape(table);
  const width = 860;
  const height = 560;
  const svg = new Svg(width, height);

  let vMax = -Infinity;
  for (const row of data.V) {
    for (const v of row) {
      if (Number.isFinite(v) && v > vMax) {
        vMax = v;
      }
    }
  }
  // the potential is gauged to 0 at each slice's global minimum; clip tall
  // walls so the wells stay visible
  const zCap = Math.min(vMax, 12 * percentile(data, 0.9));
  const clip = (v: number) => Math.min(v, zCap);

  const proj = makeProjector(
    {
      x: [data.coords[0], data.coords[data.coords.length - 1]],
      y: [data.params[0], data.params[data.params.length - 1]],
      z: [0, zCap || 1],
    },
    width,
    height,
  );

  // painter's order: far parameter rows first
  const quads: Array<{ depth: number; pts: Array<[number, number]>; fill: string }> = [];
  for (let i = 0; i + 1 < data.coords.length; i++) {
    for (let j = 0; j + 1 < data.params.length; j++) {
      const c0 = data.coords[i];
      const c1 = data.coords[i + 1];
      const p0 = data.params[j];
      const p1 = data.params[j + 1];
      const z00 = clip(data.V[i][j]);
      const z10 = clip(data.V[i + 1][j]);
      const z11 = clip(data.V[i + 1][j + 1]);
      const z01 = clip(data.V[i][j + 1]);
      const zm = (z00 + z10 + z11 + z01) / 4;
      quads.push({
        depth: proj.depth((c0 + c1) / 2, (p0 + p1) / 2),
        pts: [proj(c0, p0, z00), proj(c1, p0, z10), proj(c1, p1, z11), proj(c0, p1, z01)],
        fill: heightColor(Math.max(0, Math.min(1, zm / (zCap || 1)))),
      });
    }
  }
  quads.sort((a, b) => b.depth - a.depth || a.pts[0][0] - b.pts[0][0]);
  for (const q of quads) {
    svg.polygon(q.pts, `fill="${q.fill}" stroke="#8899aa" stroke-width="0.3"`);
  }

  // branch overlay from flagged nodes, drawn over the surface
  for (const kind of ["stable", "unstable"] as const) {
    const pts3: Array<[number, number, number]> = [];
    for (let j = 0; j < data.params.length; j++) {
      for (let i = 0; i < data.coords.length; i++) {
        if (data.flags[i][j] === kind) {
          pts3.push([data.coords[i], data.params[j], clip(data.V[i][j])]);
        }
      }
    }
    const chains = chainBranch(pts3);
    for (const chain of chains) {
      svg.path(
        chain.map(([c, p, z]) => proj(c, p, z)),
        kind === "stable" ? STABLE_STYLE : UNSTABLE_STYLE,
      );
    }
  }

  const [ox, oy] = proj(data.coords[0], data.params[0], 0);
  svg.text(ox - 10, oy + 26, "salinity difference", 'font-size="12" fill="#111"');
  const [px, py] = proj(data.coords[data.coords.length - 1], data.params[data.params.length - 1], 0);
  svg.text(px + 6, py + 6, paramLabel, 'font-size="12" fill="#111"');
  svg.raw(`<g font-size="12"><text x="${fmt(20)}" y="${fmt(24)}" fill="#111">` +
    `potential landscape over (state, ${paramLabel}); stable branch solid, unstable dashed</text></g>`);
  return svg.render();
}

function percentile(data: GridData, q: number): number {
  const vals: number[] = [];
  for (const row of data.V) {
    for (const v of row) {
      if (Number.isFinite(v)) {
        vals.push(v);
      }
    }
  }
  vals.sort((a, b) => a - b);
  return vals[Math.min(vals.length - 1, Math.floor(q * vals.length))] || 1;
}

/**
 * Chain flagged grid nodes into branch polylines: sweep the parameter axis
 * and connect each point to the nearest point of the previous column when
 * the state gap stays small; otherwise start a new chain.
 */
export function chainBranch(
  pts: Array<[number, number, number]>,
  maxStateJump?: number,
): Array<Array<[number, number, number]>> {
  if (pts.length === 0) {
    return [];
  }
  const states = pts.map((p) => p[0]);
  const span = Math.max(...states) - Math.min(...states) || 1;
  const cutoff = maxStateJump ?? 0.12 * span;
  const byParam = new Map<number, Array<[number, number, number]>>();
  for (const p of pts) {
    const list = byParam.get(p[1]) ?? [];
    list.push(p);
    byParam.set(p[1], list);
  }
  const params = [...byParam.keys()].sort((a, b) => a - b);
  const chains: Array<Array<[number, number, number]>> = [];
  const open: Array<Array<[number, number, number]>> = [];
  for (const param of params) {
    const col = byParam.get(param)!.sort((a, b) => a[0] - b[0]);
    const taken = new Set<number>();
    const still: Array<Array<[number, number, number]>> = [];
    for (const chain of open) {
      const last = chain[chain.length - 1];
      let best = -1;
      let bestGap = cutoff;
      col.forEach((p, idx) => {
        if (!taken.has(idx)) {
          const gap = Math.abs(p[0] - last[0]);
          if (gap <= bestGap) {
            best = idx;
            bestGap = gap;
          }
        }
      });
      if (best >= 0) {
        taken.add(best);
        chain.push(col[best]);
        still.push(chain);
      } else {
        chains.push(chain);
      }
    }
    col.forEach((p, idx) => {
      if (!taken.has(idx)) {
        still.push([p]);
      }
    });
    open.length = 0;
    open.push(...still);
  }
  chains.push(...open);
  return chains.filter((c) => c.length > 1);
}

export { splitOnJumps };
