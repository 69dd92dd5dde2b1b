/** Predicted peak positions for the two pulse-condition families. */

/** First twenty positive zeros of the zero-order Bessel function J0. */
export const J0_ZEROS = [
  2.4048255576957729,
  5.5200781102863106,
  8.6537279129110125,
  11.791534439014281,
  14.930917708487787,
  18.071063967910924,
  21.211636629879258,
  24.352471530749302,
  27.493479132040253,
  30.634606468431976,
  33.775820213573567,
  36.917098353664045,
  40.05842576462824,
  43.19979171317673,
  46.341188371661815,
  49.482609897397815,
  52.624051841114998,
  55.765510755019982,
  58.90698392608094,
  62.048469190227166,
] as const;

export interface Marker {
  x: number;
  label: string;
}

/** Rectangular family: tau = 2*pi*m / intensity inside [lo, hi]. */
export function rectangularMarkers(intensity: number, lo: number, hi: number): Marker[] {
  const markers: Marker[] = [];
  for (let m = 1; ; m++) {
    const x = (2 * Math.PI * m) / intensity;
    if (x > hi) break;
    if (x >= lo) markers.push({ x, label: `2π·${m}/I` });
  }
  return markers;
}

/** Sine family: tau = z_k * pi / intensity inside [lo, hi], z_k the J0 zeros. */
export function sineMarkers(intensity: number, lo: number, hi: number): Marker[] {
  const markers: Marker[] = [];
  for (let k = 0; k < J0_ZEROS.length; k++) {
    const x = (J0_ZEROS[k] * Math.PI) / intensity;
    if (x > hi) break;
    if (x >= lo) markers.push({ x, label: `z${k + 1}·π/I` });
  }
  return markers;
}

export function markersForShape(
  shape: string | undefined,
  intensity: number,
  lo: number,
  hi: number,
): Marker[] {
  if (shape === "rectangular" || shape === "rect") return rectangularMarkers(intensity, lo, hi);
  if (shape === "sine") return sineMarkers(intensity, lo, hi);
  if (shape === undefined || shape === "both") {
    return [...rectangularMarkers(intensity, lo, hi), ...sineMarkers(intensity, lo, hi)];
  }
  return [];
}
