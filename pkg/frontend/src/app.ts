/**
 * Single-page flow: pick a context and concepts, read the generated
 * statement, drag blocks into the solution area (horizontal offset
 * picks the indent), submit, read per-line feedback, or generate
 * another exercise. At most one generation request is in flight.
 */

import { ApiError, ExerciseApi } from './api.js';
import type { CatalogResponse, ClientExerciseView, GradeResponse } from './api.js';
import {
  FormState,
  buildRequestPayload,
  canSubmit,
  choiceFromDropdownValue,
  dropdownOptions,
  initialFormState,
  isConceptDisabled,
  selectChoice,
  setCustomText,
  showsCustomField,
  toggleConcept,
} from './form.js';
import { indentLevelToOffsetPx, snapToIndentLevel } from './indent.js';
import {
  PuzzleState,
  hasPlacements,
  initialPuzzleState,
  placeBlock,
  removeBlock,
  toPlacementsPayload,
} from './puzzle.js';

const api = new ExerciseApi();

interface AppState {
  form: FormState | null;
  exercise: ClientExerciseView | null;
  puzzle: PuzzleState | null;
  grade: GradeResponse | null;
  generating: boolean;
  error: string | null;
}

const state: AppState = {
  form: null,
  exercise: null,
  puzzle: null,
  grade: null,
  generating: false,
  error: null,
};

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function root(): HTMLElement {
  const node = document.getElementById('app');
  if (!node) throw new Error('missing #app root');
  return node;
}

async function boot(): Promise<void> {
  render();
  try {
    const catalog: CatalogResponse = await api.fetchCatalog();
    state.form = initialFormState(catalog);
    state.error = null;
  } catch {
    state.error = 'Could not load the catalog.';
  }
  render();
}

function render(): void {
  const host = root();
  host.replaceChildren();
  if (state.error && !state.form) {
    host.append(renderRetryBanner());
    return;
  }
  if (!state.form) {
    host.append(el('p', 'loading', 'Loading…'));
    return;
  }
  if (!state.exercise || !state.puzzle) {
    host.append(renderForm(state.form));
    return;
  }
  host.append(renderExercise(state.exercise, state.puzzle));
}

function renderRetryBanner(): HTMLElement {
  const banner = el('div', 'banner banner-error');
  banner.append(el('span', undefined, state.error ?? 'Something went wrong.'));
  const retry = el('button', 'retry', 'Retry');
  retry.addEventListener('click', () => void boot());
  banner.append(retry);
  return banner;
}

function renderForm(form: FormState): HTMLElement {
  const panel = el('section', 'panel form-panel');
  panel.append(el('h1', undefined, 'Create a programming exercise'));

  const contextRow = el('div', 'row');
  contextRow.append(el('label', undefined, 'Context'));
  const dropdown = el('select');
  for (const option of dropdownOptions(form.catalog)) {
    const opt = el('option', undefined, option.label);
    opt.value = option.value;
    dropdown.append(opt);
  }
  dropdown.value =
    form.choice.kind === 'named' ? `named:${form.choice.label}` : form.choice.kind;
  dropdown.addEventListener('change', () => {
    state.form = selectChoice(form, choiceFromDropdownValue(dropdown.value));
    render();
  });
  contextRow.append(dropdown);
  panel.append(contextRow);

  if (showsCustomField(form)) {
    const customRow = el('div', 'row');
    customRow.append(el('label', undefined, 'Your context'));
    const input = el('input');
    input.type = 'text';
    input.maxLength = 100;
    input.placeholder = 'e.g. deep sea creatures';
    input.value = form.customText;
    input.addEventListener('input', () => {
      state.form = setCustomText(form, input.value);
      render();
    });
    customRow.append(input);
    panel.append(customRow);
  }

  const conceptBox = el('fieldset', 'concepts');
  conceptBox.append(el('legend', undefined, 'Programming concepts (pick 1–3)'));
  for (const concept of form.catalog.concepts) {
    const label = el('label', 'concept');
    const box = el('input');
    box.type = 'checkbox';
    box.checked = form.selectedConcepts.includes(concept);
    box.disabled = isConceptDisabled(form, concept);
    box.addEventListener('change', () => {
      state.form = toggleConcept(form, concept);
      render();
    });
    label.append(box, document.createTextNode(` ${concept}`));
    conceptBox.append(label);
  }
  panel.append(conceptBox);

  const generateButton = el('button', 'primary', state.generating ? 'Generating…' : 'Generate');
  generateButton.disabled = !canSubmit(form) || state.generating;
  generateButton.addEventListener('click', () => void generateExercise());
  panel.append(generateButton);

  if (state.error) {
    panel.append(el('p', 'error-text', state.error));
  }
  return panel;
}

async function generateExercise(): Promise<void> {
  if (!state.form || state.generating || !canSubmit(state.form)) return;
  state.generating = true;
  state.error = null;
  render();
  try {
    const exercise = await api.createExercise(buildRequestPayload(state.form));
    state.exercise = exercise;
    state.puzzle = initialPuzzleState(exercise.blocks);
    state.grade = null;
  } catch (error) {
    state.error =
      error instanceof ApiError ? error.message : 'Network problem; please try again.';
  } finally {
    state.generating = false;
    render();
  }
}

function renderExercise(exercise: ClientExerciseView, puzzle: PuzzleState): HTMLElement {
  const panel = el('section', 'panel exercise-panel');
  panel.append(el('h1', undefined, 'Your exercise'));
  panel.append(el('p', 'statement', exercise.statement));

  const columns = el('div', 'columns');
  columns.append(renderPalette(puzzle));
  columns.append(renderSolutionArea(puzzle));
  panel.append(columns);

  const actions = el('div', 'actions');
  const submit = el('button', 'primary', 'Check solution');
  submit.disabled = !hasPlacements(puzzle);
  submit.addEventListener('click', () => void submitAttempt());
  actions.append(submit);

  const again = el('button', 'secondary', 'Generate another');
  again.addEventListener('click', () => {
    state.exercise = null;
    state.puzzle = null;
    state.grade = null;
    render();
  });
  actions.append(again);
  panel.append(actions);

  if (state.grade) {
    panel.append(renderFeedback(state.grade));
  }
  if (state.error) {
    panel.append(el('p', 'error-text', state.error));
  }
  return panel;
}

function renderPalette(puzzle: PuzzleState): HTMLElement {
  const column = el('div', 'column palette');
  column.append(el('h2', undefined, 'Drag from here'));
  const list = el('div', 'block-list');
  for (const block of puzzle.palette) {
    list.append(renderBlock(block.block_id, block.text, null));
  }
  column.addEventListener('dragover', (event) => event.preventDefault());
  column.addEventListener('drop', (event) => {
    event.preventDefault();
    const blockId = event.dataTransfer?.getData('text/plain');
    if (blockId && state.puzzle) {
      state.puzzle = removeBlock(state.puzzle, blockId);
      state.grade = null;
      render();
    }
  });
  column.append(list);
  return column;
}

function renderSolutionArea(puzzle: PuzzleState): HTMLElement {
  const column = el('div', 'column solution');
  column.append(el('h2', undefined, 'Construct your solution here'));
  const list = el('div', 'block-list solution-list');
  puzzle.placed.forEach((placement, index) => {
    const row = renderBlock(placement.block.block_id, placement.block.text, index);
    row.style.marginLeft = `${indentLevelToOffsetPx(placement.indentLevel)}px`;
    if (rowLooksWrong(index)) {
      row.classList.add('row-problem');
    }
    list.append(row);
  });
  column.addEventListener('dragover', (event) => event.preventDefault());
  column.addEventListener('drop', (event) => {
    event.preventDefault();
    const blockId = event.dataTransfer?.getData('text/plain');
    if (!blockId || !state.puzzle) return;
    const listRect = list.getBoundingClientRect();
    const indent = snapToIndentLevel(event.clientX - listRect.left);
    const position = dropPosition(list, event.clientY);
    state.puzzle = placeBlock(state.puzzle, blockId, position, indent);
    state.grade = null;
    render();
  });
  column.append(list);
  return column;
}

function rowLooksWrong(index: number): boolean {
  const diagnostic = state.grade?.diagnostics[index];
  return diagnostic !== undefined && diagnostic !== 'correct';
}

/** Row index the drop's y-coordinate points at. */
function dropPosition(list: HTMLElement, clientY: number): number {
  const rows = Array.from(list.children) as HTMLElement[];
  for (let i = 0; i < rows.length; i += 1) {
    const rect = rows[i].getBoundingClientRect();
    if (clientY < rect.top + rect.height / 2) {
      return i;
    }
  }
  return rows.length;
}

function renderBlock(blockId: string, text: string, placedIndex: number | null): HTMLElement {
  const row = el('div', 'code-block');
  row.draggable = true;
  row.dataset.blockId = blockId;
  if (placedIndex !== null) {
    row.dataset.position = String(placedIndex);
  }
  row.append(el('code', undefined, text));
  row.addEventListener('dragstart', (event) => {
    event.dataTransfer?.setData('text/plain', blockId);
  });
  return row;
}

async function submitAttempt(): Promise<void> {
  if (!state.exercise || !state.puzzle || !hasPlacements(state.puzzle)) return;
  state.error = null;
  try {
    state.grade = await api.submitAttempt(
      state.exercise.exercise_id,
      toPlacementsPayload(state.puzzle),
    );
  } catch (error) {
    if (error instanceof ApiError && error.status === 404) {
      state.error = 'This exercise expired; please generate a new one.';
    } else {
      // network problem: keep the attempt intact, just surface a notice
      state.error = 'Could not submit right now; your attempt is unchanged.';
    }
  }
  render();
}

function renderFeedback(grade: GradeResponse): HTMLElement {
  const box = el('div', grade.status === 'solved' ? 'banner banner-success' : 'banner banner-info');
  const list = el('ul', 'feedback');
  for (const message of grade.messages) {
    list.append(el('li', undefined, message));
  }
  box.append(list);
  return box;
}

document.addEventListener('DOMContentLoaded', () => void boot());
