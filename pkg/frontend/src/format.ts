// Display formatting only. Energy values pass through from the API; the one
// and only source of every displayed number is a response field.

export function formatGwh(value: number): string {
  if (!Number.isFinite(value)) {
    return "-";
  }
  return value >= 1000 ? value.toFixed(0) : value.toPrecision(3);
}

export function formatDelta(value: number | undefined | null): string {
  if (value === undefined || value === null || !Number.isFinite(value)) {
    return "-";
  }
  const sign = value >= 0 ? "+" : "";
  return `${sign}${formatGwh(value)}`;
}

export function formatPct(value: number | undefined | null): string {
  if (value === undefined || value === null || !Number.isFinite(value)) {
    return "-";
  }
  const sign = value >= 0 ? "+" : "";
  return `${sign}${value.toFixed(1)}%`;
}

export function formatWhPerGb(value: number): string {
  return value >= 100 ? value.toFixed(0) : value.toPrecision(3);
}
