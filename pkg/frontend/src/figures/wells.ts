/**
 * Side-by-side potential cross sections: the double-well/single-well pairs,
 * either across the two forcing values or across the two temperatures.
 */

import { numericColumn, requireColumns, Table } from "../csv";
import { loadManifest } from "../manifest";
import { drawAxes, linearScale, STABLE_STYLE, Svg } from "../svg";

export function renderWells(
  tables: Table[],
  labelParam: "P" | "theta",
): string {
  for (const t of tables) {
    requireColumns(t, ["coord", "V"]);
  }
  const width = 900;
  const height = 420;
  const svg = new Svg(width, height);
  const panelW = (width - 120) / tables.length;

  tables.forEach((table, i) => {
    const coord = numericColumn(table, "coord");
    const V = numericColumn(table, "V");
    const x0 = 70 + i * (panelW + 30);
    const sx = linearScale(
      [Math.min(...coord), Math.max(...coord)],
      [x0, x0 + panelW - 20],
    );
    const vMax = Math.max(...V);
    const vMin = Math.min(...V);
    const pad = 0.05 * (vMax - vMin || 1);
    const sy = linearScale([vMin - pad, vMax + pad], [height - 70, 40]);
    drawAxes(svg, sx, sy, "salinity difference", i === 0 ? "potential" : "");
    svg.path(
      coord.map((c, j) => [sx(c), sy(V[j])] as [number, number]),
      STABLE_STYLE,
    );
    const manifest = loadManifest(table.path);
    let title = table.path;
    if (manifest) {
      const m = manifest.resolved_params.model;
      title =
        labelParam === "P" ? `P = ${m.P}` : `theta = ${m.theta}`;
    }
    svg.text(
      x0 + (panelW - 20) / 2,
      24,
      title,
      'font-size="13" text-anchor="middle" fill="#111"',
    );
  });
  return svg.render();
}
