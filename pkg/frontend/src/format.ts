/** Display-only rounding; every number shown comes from an API field. */

export function pct(value: number, places = 2): string {
  return value.toFixed(places);
}

export function probabilityPct(value: number): string {
  const rounded = Math.round(value * 1000) / 10;
  return `${rounded}%`;
}

export function hours(value: number): string {
  return Number.isInteger(value) ? String(value) : value.toFixed(2);
}

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}
