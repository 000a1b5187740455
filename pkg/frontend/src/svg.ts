/**
 * Deterministic SVG assembly: fixed-precision numbers, attribute order as
 * written, no timestamps or randomness, so identical inputs produce
 * byte-identical files.
 */

export function fmt(x: number): string {
  if (!Number.isFinite(x)) {
    throw new Error(`non-finite coordinate: ${x}`);
  }
  const s = x.toFixed(3);
  return s === "-0.000" ? "0.000" : s;
}

export interface LinearScale {
  (value: number): number;
  domain: [number, number];
  range: [number, number];
}

export function linearScale(domain: [number, number], range: [number, number]): LinearScale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  const scale = ((value: number) => r0 + ((value - d0) / span) * (r1 - r0)) as LinearScale;
  scale.domain = domain;
  scale.range = range;
  return scale;
}

/** Round-ish tick positions covering the domain. */
export function ticks(domain: [number, number], count = 5): number[] {
  const [lo, hi] = domain;
  const span = hi - lo;
  if (span <= 0) {
    return [lo];
  }
  const rawStep = span / Math.max(count, 1);
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const norm = rawStep / mag;
  const step = (norm >= 5 ? 5 : norm >= 2 ? 2 : 1) * mag;
  const start = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = start; v <= hi + 1e-9 * span; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

export function tickLabel(v: number): string {
  const abs = Math.abs(v);
  if (abs !== 0 && (abs >= 1e4 || abs < 1e-2)) {
    return v.toExponential(1);
  }
  return String(Math.round(v * 1000) / 1000);
}

export class Svg {
  private parts: string[] = [];

  constructor(readonly width: number, readonly height: number) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
        `viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
    );
    this.parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  }

  raw(fragment: string): void {
    this.parts.push(fragment);
  }

  line(x1: number, y1: number, x2: number, y2: number, style: string): void {
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ${style}/>`,
    );
  }

  path(points: Array<[number, number]>, style: string): void {
    if (points.length === 0) {
      return;
    }
    const d = points
      .map(([x, y], i) => `${i === 0 ? "M" : "L"}${fmt(x)} ${fmt(y)}`)
      .join(" ");
    this.parts.push(`<path d="${d}" ${style}/>`);
  }

  polygon(points: Array<[number, number]>, style: string): void {
    const pts = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.parts.push(`<polygon points="${pts}" ${style}/>`);
  }

  rect(x: number, y: number, w: number, h: number, style: string): void {
    this.parts.push(
      `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" ${style}/>`,
    );
  }

  circle(cx: number, cy: number, r: number, style: string): void {
    this.parts.push(`<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${fmt(r)}" ${style}/>`);
  }

  text(x: number, y: number, content: string, style = ""): void {
    const esc = content
      .replace(/&/g, "&amp;")
      .replace(/</g, "&lt;")
      .replace(/>/g, "&gt;");
    this.parts.push(`<text x="${fmt(x)}" y="${fmt(y)}" ${style}>${esc}</text>`);
  }

  render(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}

export const STABLE_STYLE = 'fill="none" stroke="#1a3f8f" stroke-width="2"';
export const UNSTABLE_STYLE =
  'fill="none" stroke="#b03030" stroke-width="2" stroke-dasharray="6 4"';

/** Axes with ticks and labels for a standard 2-d panel. */
export function drawAxes(
  svg: Svg,
  sx: LinearScale,
  sy: LinearScale,
  xLabel: string,
  yLabel: string,
): void {
  const [x0, x1] = sx.range;
  const [y0, y1] = sy.range;
  const axisStyle = 'stroke="#333" stroke-width="1"';
  svg.line(x0, y0, x1, y0, axisStyle);
  svg.line(x0, y0, x0, y1, axisStyle);
  for (const t of ticks(sx.domain)) {
    const px = sx(t);
    svg.line(px, y0, px, y0 + 4, axisStyle);
    svg.text(px, y0 + 16, tickLabel(t), 'font-size="10" text-anchor="middle" fill="#333"');
  }
  for (const t of ticks(sy.domain)) {
    const py = sy(t);
    svg.line(x0 - 4, py, x0, py, axisStyle);
    svg.text(x0 - 7, py + 3, tickLabel(t), 'font-size="10" text-anchor="end" fill="#333"');
  }
  svg.text((x0 + x1) / 2, y0 + 32, xLabel, 'font-size="12" text-anchor="middle" fill="#111"');
  svg.text(
    x0 - 38,
    (y0 + y1) / 2,
    yLabel,
    `font-size="12" text-anchor="middle" fill="#111" transform="rotate(-90 ${fmt(x0 - 38)} ${fmt((y0 + y1) / 2)})"`,
  );
}

/** Split a point sequence into segments wherever consecutive points jump. */
export function splitOnJumps(
  points: Array<[number, number]>,
  maxJump: number,
): Array<Array<[number, number]>> {
  const out: Array<Array<[number, number]>> = [];
  let current: Array<[number, number]> = [];
  for (const pt of points) {
    if (current.length > 0) {
      const [px, py] = current[current.length - 1];
      if (Math.hypot(pt[0] - px, pt[1] - py) > maxJump) {
        if (current.length > 1) {
          out.push(current);
        }
        current = [];
      }
    }
    current.push(pt);
  }
  if (current.length > 1) {
    out.push(current);
  }
  return out;
}
