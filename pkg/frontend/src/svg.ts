/** Deterministic SVG figure rendering: fixed canvas, fixed style, numbers
 * formatted with fixed precision, no randomness or timestamps, so identical
 * inputs render byte-identical files. */

export interface Series {
  label: string;
  points: Array<[number, number]>;
}

export interface FigureData {
  title: string;
  xLabel: string;
  yLabel: string;
  xLog: boolean;
  yLog: boolean;
  series: Series[];
  /** log-log fitted line y = exp(intercept) * x^slope, drawn dashed. */
  fitLine?: { slope: number; intercept: number };
  annotation?: string;
}

const WIDTH = 720;
const HEIGHT = 480;
const MARGIN = { left: 78, right: 24, top: 42, bottom: 58 };
const PALETTE = ['#1f77b4', '#d62728', '#2ca02c', '#9467bd', '#ff7f0e', '#8c564b'];

interface Scale {
  toPixel(value: number): number;
  ticks: number[];
  min: number;
  max: number;
}

function fmt(value: number): string {
  if (value === 0) return '0';
  const magnitude = Math.abs(value);
  if (magnitude >= 0.01 && magnitude < 10000) {
    return String(Number(value.toPrecision(4)));
  }
  return value.toExponential(2).replace('e+', 'e');
}

function px(value: number): string {
  return value.toFixed(2);
}

function linearTicks(min: number, max: number): number[] {
  const span = max - min;
  const step = Math.pow(10, Math.floor(Math.log10(span / 4)));
  const scaled = span / 4 / step;
  const nice = scaled >= 5 ? 5 * step : scaled >= 2 ? 2 * step : step;
  const ticks: number[] = [];
  for (let v = Math.ceil(min / nice) * nice; v <= max + 1e-12 * span; v += nice) {
    ticks.push(Math.abs(v) < 1e-12 * span ? 0 : v);
  }
  return ticks;
}

function logTicks(min: number, max: number): number[] {
  const lo = Math.floor(Math.log10(min));
  const hi = Math.ceil(Math.log10(max));
  const ticks: number[] = [];
  if (hi - lo <= 1) {
    // less than a decade: fall back to a few linear ticks inside the range
    return linearTicks(min, max);
  }
  for (let d = lo; d <= hi; d += 1) {
    const v = Math.pow(10, d);
    if (v >= min / 1.0001 && v <= max * 1.0001) ticks.push(v);
  }
  return ticks;
}

function makeScale(
  values: number[],
  log: boolean,
  pixelMin: number,
  pixelMax: number,
  source: string,
): Scale {
  const usable = values.filter((v) => Number.isFinite(v) && (!log || v > 0));
  if (usable.length === 0) {
    throw new Error(`${source}: no plottable values (log axes need positive data)`);
  }
  let min = Math.min(...usable);
  let max = Math.max(...usable);
  if (min === max) {
    const pad = log ? min * 0.5 : Math.max(Math.abs(min) * 0.1, 1);
    min -= log ? 0 : pad;
    max += pad;
    if (log) max = min * 4;
  } else if (log) {
    min /= 1.3;
    max *= 1.3;
  } else {
    const pad = (max - min) * 0.06;
    min -= pad;
    max += pad;
  }
  const t = (v: number) => (log ? Math.log(v) : v);
  const span = t(max) - t(min);
  return {
    toPixel: (v: number) => pixelMin + ((t(v) - t(min)) / span) * (pixelMax - pixelMin),
    ticks: log ? logTicks(min, max) : linearTicks(min, max),
    min,
    max,
  };
}

export function renderFigure(data: FigureData): string {
  const plottable = data.series.filter((s) => s.points.length > 0);
  if (plottable.length === 0) {
    throw new Error(`${data.title}: no series to plot`);
  }
  const xs = plottable.flatMap((s) => s.points.map((p) => p[0]));
  const ys = plottable.flatMap((s) => s.points.map((p) => p[1]));
  const xScale = makeScale(xs, data.xLog, MARGIN.left, WIDTH - MARGIN.right, data.title);
  const yScale = makeScale(ys, data.yLog, HEIGHT - MARGIN.bottom, MARGIN.top, data.title);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
      `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  parts.push(
    `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="16">${escapeXml(data.title)}</text>`,
  );

  // frame
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = HEIGHT - MARGIN.bottom;
  const y1 = MARGIN.top;
  parts.push(
    `<rect x="${x0}" y="${y1}" width="${x1 - x0}" height="${y0 - y1}" fill="none" stroke="#333" stroke-width="1"/>`,
  );

  for (const tick of xScale.ticks) {
    const xp = xScale.toPixel(tick);
    parts.push(`<line x1="${px(xp)}" y1="${y0}" x2="${px(xp)}" y2="${y0 + 5}" stroke="#333"/>`);
    parts.push(
      `<text x="${px(xp)}" y="${y0 + 20}" text-anchor="middle" font-size="11">${fmt(tick)}</text>`,
    );
    parts.push(
      `<line x1="${px(xp)}" y1="${px(y0)}" x2="${px(xp)}" y2="${px(y1)}" stroke="#ddd" stroke-width="0.5"/>`,
    );
  }
  for (const tick of yScale.ticks) {
    const yp = yScale.toPixel(tick);
    parts.push(`<line x1="${x0 - 5}" y1="${px(yp)}" x2="${x0}" y2="${px(yp)}" stroke="#333"/>`);
    parts.push(
      `<text x="${x0 - 8}" y="${px(yp + 4)}" text-anchor="end" font-size="11">${fmt(tick)}</text>`,
    );
    parts.push(
      `<line x1="${x0}" y1="${px(yp)}" x2="${x1}" y2="${px(yp)}" stroke="#ddd" stroke-width="0.5"/>`,
    );
  }
  parts.push(
    `<text x="${(x0 + x1) / 2}" y="${HEIGHT - 14}" text-anchor="middle" font-size="13">${escapeXml(data.xLabel)}</text>`,
  );
  parts.push(
    `<text x="20" y="${(y0 + y1) / 2}" text-anchor="middle" font-size="13" ` +
      `transform="rotate(-90 20 ${(y0 + y1) / 2})">${escapeXml(data.yLabel)}</text>`,
  );

  if (data.fitLine) {
    const { slope, intercept } = data.fitLine;
    const samples = 64;
    const coords: string[] = [];
    for (let i = 0; i <= samples; i += 1) {
      const lx = Math.log(xScale.min) + (i / samples) * (Math.log(xScale.max) - Math.log(xScale.min));
      const x = Math.exp(lx);
      const y = Math.exp(intercept) * Math.pow(x, slope);
      if (y < yScale.min || y > yScale.max) continue;
      coords.push(`${px(xScale.toPixel(x))},${px(yScale.toPixel(y))}`);
    }
    if (coords.length >= 2) {
      parts.push(
        `<polyline points="${coords.join(' ')}" fill="none" stroke="#555" stroke-width="1.2" stroke-dasharray="6 4"/>`,
      );
    }
  }

  plottable.forEach((series, index) => {
    const color = PALETTE[index % PALETTE.length];
    const visible = series.points.filter(
      ([x, y]) =>
        Number.isFinite(x) && Number.isFinite(y) && (!data.xLog || x > 0) && (!data.yLog || y > 0),
    );
    const coords = visible.map(
      ([x, y]) => `${px(xScale.toPixel(x))},${px(yScale.toPixel(y))}`,
    );
    if (coords.length > 1) {
      parts.push(
        `<polyline points="${coords.join(' ')}" fill="none" stroke="${color}" stroke-width="1.6"/>`,
      );
    }
    if (visible.length <= 200) {
      for (const [x, y] of visible) {
        parts.push(
          `<circle cx="${px(xScale.toPixel(x))}" cy="${px(yScale.toPixel(y))}" r="3" fill="${color}"/>`,
        );
      }
    }
  });

  if (plottable.length > 1) {
    plottable.forEach((series, index) => {
      const color = PALETTE[index % PALETTE.length];
      const ly = y1 + 16 + index * 16;
      parts.push(`<line x1="${x1 - 150}" y1="${ly - 4}" x2="${x1 - 126}" y2="${ly - 4}" stroke="${color}" stroke-width="2"/>`);
      parts.push(
        `<text x="${x1 - 120}" y="${ly}" font-size="11">${escapeXml(series.label)}</text>`,
      );
    });
  }

  if (data.annotation) {
    parts.push(
      `<text x="${x0 + 10}" y="${y1 + 18}" font-size="13" fill="#222">${escapeXml(data.annotation)}</text>`,
    );
  }

  parts.push('</svg>');
  return parts.join('\n') + '\n';
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;');
}
