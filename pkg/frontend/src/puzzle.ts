/**
 * Attempt state for the drag-and-drop solving area.
 *
 * Pure data operations: the DOM layer translates drag events into these
 * calls. Vertical position sets order; the horizontal drop offset picks
 * the indent level; blocks can be reordered, re-indented, or dragged
 * back to the palette.
 */

import type { ClientBlock, PlacementPayload } from './api.js';

export interface PlacedBlock {
  block: ClientBlock;
  indentLevel: number;
}

export interface PuzzleState {
  /** Blocks still in the palette, in presented order. */
  palette: ClientBlock[];
  /** Ordered solution-area placements. */
  placed: PlacedBlock[];
}

export function initialPuzzleState(blocks: ClientBlock[]): PuzzleState {
  return { palette: [...blocks], placed: [] };
}

function without(blocks: ClientBlock[], blockId: string): ClientBlock[] {
  return blocks.filter((b) => b.block_id !== blockId);
}

function findBlock(state: PuzzleState, blockId: string): ClientBlock | undefined {
  return (
    state.palette.find((b) => b.block_id === blockId) ??
    state.placed.find((p) => p.block.block_id === blockId)?.block
  );
}

/** Drop a block into the solution area at `position` (clamped), with
 *  the given indent. Works for palette drops and internal reorders. */
export function placeBlock(
  state: PuzzleState,
  blockId: string,
  position: number,
  indentLevel: number,
): PuzzleState {
  const block = findBlock(state, blockId);
  if (!block) {
    return state;
  }
  const placed = state.placed.filter((p) => p.block.block_id !== blockId);
  const index = Math.max(0, Math.min(position, placed.length));
  placed.splice(index, 0, { block, indentLevel });
  return { palette: without(state.palette, blockId), placed };
}

/** Drag a placed block back to the palette (appended at the end). */
export function removeBlock(state: PuzzleState, blockId: string): PuzzleState {
  const entry = state.placed.find((p) => p.block.block_id === blockId);
  if (!entry) {
    return state;
  }
  return {
    palette: [...state.palette, entry.block],
    placed: state.placed.filter((p) => p.block.block_id !== blockId),
  };
}

export function setIndent(
  state: PuzzleState,
  blockId: string,
  indentLevel: number,
): PuzzleState {
  return {
    ...state,
    placed: state.placed.map((p) =>
      p.block.block_id === blockId ? { ...p, indentLevel } : p,
    ),
  };
}

export function toPlacementsPayload(state: PuzzleState): PlacementPayload[] {
  return state.placed.map((p) => ({
    block_id: p.block.block_id,
    indent_level: p.indentLevel,
  }));
}

export function hasPlacements(state: PuzzleState): boolean {
  return state.placed.length > 0;
}
