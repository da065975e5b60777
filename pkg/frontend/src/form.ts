/**
 * Request-form state machine.
 *
 * The form can express exactly the four context modes and 1..3
 * concepts; every payload it emits is one the server accepts at the
 * mode/cardinality level. Concept checkboxes lock at three selections
 * and the submit button stays disabled at zero.
 */

import type { CatalogResponse, ContextMode, ExerciseRequestPayload } from './api.js';

export const MAX_SELECTED_CONCEPTS = 3;

/** Dropdown entries beyond the named catalog labels. */
export const SPECIAL_CHOICES = {
  none: 'No context',
  custom: 'Type your own',
  surprise: 'Surprise me',
} as const;

export type ContextChoice =
  | { kind: 'named'; label: string }
  | { kind: 'none' }
  | { kind: 'custom' }
  | { kind: 'surprise' };

export interface FormState {
  catalog: CatalogResponse;
  choice: ContextChoice;
  customText: string;
  selectedConcepts: string[];
}

export function initialFormState(catalog: CatalogResponse): FormState {
  return {
    catalog,
    choice: { kind: 'named', label: catalog.contexts[0] ?? '' },
    customText: '',
    selectedConcepts: [],
  };
}

export interface DropdownOption {
  value: string;
  label: string;
}

/** 20 named labels followed by the three special choices. */
export function dropdownOptions(catalog: CatalogResponse): DropdownOption[] {
  return [
    ...catalog.contexts.map((label) => ({ value: `named:${label}`, label })),
    { value: 'none', label: SPECIAL_CHOICES.none },
    { value: 'custom', label: SPECIAL_CHOICES.custom },
    { value: 'surprise', label: SPECIAL_CHOICES.surprise },
  ];
}

export function choiceFromDropdownValue(value: string): ContextChoice {
  if (value.startsWith('named:')) {
    return { kind: 'named', label: value.slice('named:'.length) };
  }
  if (value === 'none' || value === 'custom' || value === 'surprise') {
    return { kind: value };
  }
  throw new Error(`unknown dropdown value: ${value}`);
}

export function selectChoice(state: FormState, choice: ContextChoice): FormState {
  return { ...state, choice };
}

export function setCustomText(state: FormState, text: string): FormState {
  return { ...state, customText: text };
}

/** Whether the free-text context field is visible. */
export function showsCustomField(state: FormState): boolean {
  return state.choice.kind === 'custom';
}

export function toggleConcept(state: FormState, concept: string): FormState {
  const selected = state.selectedConcepts.includes(concept)
    ? state.selectedConcepts.filter((c) => c !== concept)
    : state.selectedConcepts.length < MAX_SELECTED_CONCEPTS
      ? [...state.selectedConcepts, concept]
      : state.selectedConcepts; // locked at the limit: ignore the click
  return { ...state, selectedConcepts: selected };
}

/** Unchecked boxes become disabled once the selection limit is hit. */
export function isConceptDisabled(state: FormState, concept: string): boolean {
  return (
    state.selectedConcepts.length >= MAX_SELECTED_CONCEPTS &&
    !state.selectedConcepts.includes(concept)
  );
}

export function canSubmit(state: FormState): boolean {
  if (state.selectedConcepts.length === 0) {
    return false;
  }
  if (state.selectedConcepts.length > MAX_SELECTED_CONCEPTS) {
    return false;
  }
  if (state.choice.kind === 'custom' && state.customText.trim() === '') {
    return false;
  }
  return true;
}

/** The exact request body the server accepts; throws if called while
 *  canSubmit() is false. */
export function buildRequestPayload(state: FormState): ExerciseRequestPayload {
  if (!canSubmit(state)) {
    throw new Error('form is not submittable in its current state');
  }
  const concepts = [...state.selectedConcepts];
  switch (state.choice.kind) {
    case 'named':
      return { context_mode: 'named', context_text: state.choice.label, concepts };
    case 'custom':
      return { context_mode: 'custom', context_text: state.customText.trim(), concepts };
    case 'none':
      return { context_mode: 'none', concepts };
    case 'surprise':
      return { context_mode: 'surprise', concepts };
  }
}

export function modeOf(choice: ContextChoice): ContextMode {
  return choice.kind;
}
