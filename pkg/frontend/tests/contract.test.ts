/**
 * Contract tests: every payload the form can emit validates against the
 * recorded API schema, and the mode/cardinality violations the server
 * rejects are unrepresentable or schema-invalid.
 *
 * The backend test suite replays this same schema file against the live
 * service, so a drift on either side fails somewhere.
 */

import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';

import { describe, expect, it } from 'vitest';

import type { CatalogResponse } from '../src/api.js';
import {
  buildRequestPayload,
  canSubmit,
  initialFormState,
  selectChoice,
  setCustomText,
  toggleConcept,
} from '../src/form.js';
import { matchesSchema, type Schema } from './schema_check.js';

const here = dirname(fileURLToPath(import.meta.url));
const schema = JSON.parse(
  readFileSync(join(here, 'fixtures', 'exercise_request.schema.json'), 'utf-8'),
) as Schema;

const CATALOG: CatalogResponse = {
  contexts: [
    'Amusement Park', 'Animals', 'Aquarium', 'Basketball', 'Cooking',
    'Film', 'Fishing', 'Gardening', 'Mental Health', 'Modern Gaming',
    'Music', 'Olympics', 'Pets', 'Relationships', 'Restaurant',
    'Rugby', 'Social Media', 'Sports', 'Streaming Services', 'Virtual Reality',
  ],
  concepts: [
    'Arithmetic operators', 'Dictionaries', 'File handling & I/O', 'Lists',
    'Loops', 'Selection statements (if/else, etc.)', 'Strings', 'Variables',
  ],
  modes: ['named', 'custom', 'none', 'surprise'],
};

function formWith(concepts: string[]) {
  let state = initialFormState(CATALOG);
  for (const concept of concepts) {
    state = toggleConcept(state, concept);
  }
  return state;
}

describe('recorded schema self-checks', () => {
  it('accepts a canonical request', () => {
    expect(
      matchesSchema(
        { context_mode: 'named', context_text: 'Animals', concepts: ['Loops'] },
        schema,
      ),
    ).toBe(true);
  });

  it('rejects zero and four concepts', () => {
    expect(
      matchesSchema({ context_mode: 'none', concepts: [] }, schema),
    ).toBe(false);
    expect(
      matchesSchema(
        { context_mode: 'none', concepts: ['Loops', 'Lists', 'Strings', 'Variables'] },
        schema,
      ),
    ).toBe(false);
  });

  it('rejects named / custom without context text', () => {
    expect(matchesSchema({ context_mode: 'named', concepts: ['Loops'] }, schema)).toBe(false);
    expect(matchesSchema({ context_mode: 'custom', concepts: ['Loops'] }, schema)).toBe(false);
  });

  it('rejects unknown modes and off-catalog named contexts', () => {
    expect(matchesSchema({ context_mode: 'teleport', concepts: ['Loops'] }, schema)).toBe(false);
    expect(
      matchesSchema(
        { context_mode: 'named', context_text: 'Cats', concepts: ['Loops'] },
        schema,
      ),
    ).toBe(false);
  });
});

describe('form output conforms to the recorded schema', () => {
  it('for every context mode', () => {
    const base = formWith(['Loops', 'Variables']);
    const states = [
      selectChoice(base, { kind: 'named', label: 'Animals' }),
      setCustomText(selectChoice(base, { kind: 'custom' }), 'deep sea creatures'),
      selectChoice(base, { kind: 'none' }),
      selectChoice(base, { kind: 'surprise' }),
    ];
    for (const state of states) {
      expect(canSubmit(state)).toBe(true);
      expect(matchesSchema(buildRequestPayload(state), schema)).toBe(true);
    }
  });

  it('for every named context label and 1..3 concept counts', () => {
    for (const label of CATALOG.contexts) {
      for (const conceptCount of [1, 2, 3]) {
        const state = selectChoice(
          formWith(CATALOG.concepts.slice(0, conceptCount)),
          { kind: 'named', label },
        );
        expect(matchesSchema(buildRequestPayload(state), schema)).toBe(true);
      }
    }
  });

  it('cannot emit the payloads the server rejects at mode/cardinality level', () => {
    // zero concepts: unsubmittable
    expect(canSubmit(initialFormState(CATALOG))).toBe(false);
    // four concepts: unreachable through toggling
    const maxed = toggleConcept(formWith(['Loops', 'Lists', 'Strings']), 'Variables');
    expect(maxed.selectedConcepts).toHaveLength(3);
    // custom without text: unsubmittable
    expect(canSubmit(selectChoice(formWith(['Loops']), { kind: 'custom' }))).toBe(false);
  });
});
