/**
 * Indent snapping: a pure function of the horizontal drop offset, so it
 * is testable without a browser.
 */

export const INDENT_STEP_PX = 40;
export const MAX_INDENT_LEVEL = 5;

/** Snap an x-offset (px, relative to the solution column's left edge)
 *  to a discrete indent level: one level per 40px step, clamped to
 *  [0, 5]. Drops left of the first step land on level 0. */
export function snapToIndentLevel(xOffsetPx: number): number {
  if (!Number.isFinite(xOffsetPx) || xOffsetPx <= 0) {
    return 0;
  }
  return Math.min(Math.floor(xOffsetPx / INDENT_STEP_PX), MAX_INDENT_LEVEL);
}

/** Pixel offset used to render a block at a given indent level. */
export function indentLevelToOffsetPx(level: number): number {
  return Math.max(0, Math.min(level, MAX_INDENT_LEVEL)) * INDENT_STEP_PX;
}
