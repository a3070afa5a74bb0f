// Last-write-wins ordering for overlapping requests: every request takes a
// monotonically increasing ticket and only the newest acknowledged response
// may update the display.

export class LatestWins {
  private issued = 0;
  private applied = 0;

  ticket(): number {
    this.issued += 1;
    return this.issued;
  }

  /** True when the response for `ticket` is the newest seen so far. */
  accept(ticket: number): boolean {
    if (ticket <= this.applied) {
      return false;
    }
    this.applied = ticket;
    return true;
  }
}

export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  waitMs: number,
): (...args: A) => void {
  let timer: ReturnType<typeof setTimeout> | undefined;
  return (...args: A) => {
    if (timer !== undefined) {
      clearTimeout(timer);
    }
    timer = setTimeout(() => fn(...args), waitMs);
  };
}
