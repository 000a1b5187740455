/**
 * The folded equilibrium surface around the cusp, in the shifted state
 * coordinate: wireframe slices of the equilibrium branches at several
 * temperatures (each slice an S-curve over the forcing), with the fold
 * edges overlaid when a fold-curve file is supplied.
 */

import { numericColumn, requireColumns, stringColumn, Table } from "../csv";
import { loadManifest, stateShift } from "../manifest";
import { makeProjector } from "../project3d";
import { SchemaError } from "../csv";
import { STABLE_STYLE, Svg, UNSTABLE_STYLE } from "../svg";
import { chainBranch, reshapeLandscape } from "./surface";

interface Slice {
  theta: number;
  shift: number;
  // branch points (state S, forcing P, stability)
  points: Array<{ S: number; P: number; stability: string }>;
}

function sliceFromLandscape(table: Table): Slice {
  const manifest = loadManifest(table.path);
  if (!manifest) {
    throw new SchemaError(
      `${table.path}: no manifest alongside (needed for theta and the state shift)`,
    );
  }
  const model = manifest.resolved_params.model;
  const data = reshapeLandscape(table);
  const points: Slice["points"] = [];
  for (let i = 0; i < data.coords.length; i++) {
    for (let j = 0; j < data.params.length; j++) {
      const flag = data.flags[i][j];
      if (flag === "stable" || flag === "unstable") {
        points.push({ S: data.coords[i], P: data.params[j], stability: flag });
      }
    }
  }
  return { theta: model.theta, shift: stateShift(model), points };
}

export function renderCusp(landscapes: Table[], folds: Table | null): string {
  const slices = landscapes.map(sliceFromLandscape)
    .sort((a, b) => a.theta - b.theta);
  if (slices.length < 2) {
    throw new SchemaError(
      "the folded-surface figure needs at least two landscape slices at distinct temperatures",
    );
  }

  const allP: number[] = [];
  const allS: number[] = [];
  for (const slice of slices) {
    for (const pt of slice.points) {
      allP.push(pt.P);
      allS.push(pt.S - slice.shift);
    }
  }
  let foldPts: Array<{ branch: string; s: number; theta: number; P: number }> = [];
  if (folds) {
    requireColumns(folds, ["branch", "s_star", "theta_c", "P_c"]);
    const branch = stringColumn(folds, "branch");
    const s = numericColumn(folds, "s_star");
    const th = numericColumn(folds, "theta_c");
    const Pc = numericColumn(folds, "P_c");
    foldPts = branch.map((b, i) => ({ branch: b, s: s[i], theta: th[i], P: Pc[i] }));
  }

  const thetaLo = slices[0].theta;
  const thetaHi = slices[slices.length - 1].theta;
  const inRange = foldPts.filter(
    (f) => f.theta >= thetaLo && f.theta <= thetaHi &&
      f.P >= Math.min(...allP) && f.P <= Math.max(...allP),
  );

  const width = 880;
  const height = 620;
  const svg = new Svg(width, height);
  const proj = makeProjector(
    {
      x: [Math.min(...allP), Math.max(...allP)],
      y: [thetaLo, thetaHi],
      z: [Math.min(...allS), Math.max(...allS)],
    },
    width,
    height,
  );

  // far slices first so nearer ones draw on top
  const ordered = [...slices].sort(
    (a, b) => proj.depth(0, b.theta) - proj.depth(0, a.theta),
  );
  for (const slice of ordered) {
    for (const kind of ["stable", "unstable"] as const) {
      const pts3 = slice.points
        .filter((p) => p.stability === kind)
        .map((p) => [p.S, p.P, 0] as [number, number, number]);
      for (const chain of chainBranch(pts3)) {
        svg.path(
          chain.map(([S, P]) => proj(P, slice.theta, S - slice.shift)),
          kind === "stable" ? STABLE_STYLE : UNSTABLE_STYLE,
        );
      }
    }
  }

  for (const name of ["lower", "upper"]) {
    const curve = inRange.filter((f) => f.branch === name)
      .sort((a, b) => a.theta - b.theta);
    if (curve.length > 1) {
      svg.path(
        curve.map((f) => proj(f.P, f.theta, f.s)),
        'fill="none" stroke="black" stroke-width="1.6"',
      );
    }
  }

  svg.text(20, 24,
    "equilibrium surface in the shifted state over (forcing, temperature); " +
    "stable solid, unstable dashed" + (inRange.length ? ", fold edges black" : ""),
    'font-size="12" fill="#111"');
  const [ax, ay] = proj(Math.max(...allP), thetaLo, Math.min(...allS));
  svg.text(ax - 60, ay + 28, "freshwater forcing", 'font-size="12" fill="#111"');
  const [bx, by] = proj(Math.max(...allP), thetaHi, Math.min(...allS));
  svg.text(bx + 8, by, "temperature", 'font-size="12" fill="#111"');
  return svg.render();
}
