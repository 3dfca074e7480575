// Numbers coming from the API are displayed verbatim: String(x) emits the
// shortest round-trip decimal for a float64, which is exactly what the
// server's JSON serializer produced. No client-side recomputation, no
// rounding of statistical values.

export function exactString(value: number | null | undefined): string {
  if (value === null || value === undefined) return "";
  return String(value);
}

export function pct(value: number): string {
  return `${value.toFixed(1)}%`;
}
