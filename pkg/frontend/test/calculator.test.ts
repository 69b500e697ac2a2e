import { join } from 'node:path';
import { fileURLToPath } from 'node:url';

import { describe, expect, it } from 'vitest';

import {
  BoundaryError,
  Calculator,
  compute,
  LifecycleError,
  NativeError,
  readTable,
  runCli,
} from '../src/index.js';

const fixturesDir = join(fileURLToPath(new URL('.', import.meta.url)), '..', 'fixtures');

function binaryCopy(n: number): { src: number[]; dst: number[] } {
  // deterministic LCG so the fixture is stable without extra deps
  let state = 12345;
  const next = () => {
    state = (state * 1103515245 + 12345) % 2147483648;
    return state / 2147483648;
  };
  const src = Array.from({ length: n }, () => (next() < 0.5 ? 0 : 1));
  const dst = [0, ...src.slice(0, n - 1)];
  return { src, dst };
}

describe('lifecycle contract', () => {
  it('computes TE on the binary-copy pattern', () => {
    const { src, dst } = binaryCopy(2000);
    const calc = new Calculator('te', 'discrete');
    calc.setAlphabet(2).setProperty('k', 1);
    calc.initialise();
    calc.addObservations(src, dst);
    calc.finalise();
    expect(calc.computeAverage()).toBeGreaterThan(0.95);
    expect(calc.units).toBe('bits');
    expect(calc.nObservations).toBe(1999);
  });

  it('rejects out-of-order calls', () => {
    const calc = new Calculator('mi', 'discrete');
    expect(() => calc.addObservations([0, 1], [1, 0])).toThrow(LifecycleError);
    expect(() => calc.computeAverage()).toThrow(LifecycleError);
    calc.initialise();
    expect(() => calc.finalise()).toThrow(LifecycleError);
  });

  it('rejects further observations after finalise', () => {
    const calc = new Calculator('mi', 'discrete').setAlphabet(2);
    calc.setObservations([0, 1, 0, 1], [0, 1, 1, 0]);
    expect(() => calc.addObservations([0, 1], [1, 0])).toThrow(LifecycleError);
  });

  it('pools multiple trials like the native ensemble path', () => {
    const a = binaryCopy(400);
    const b = binaryCopy(300);
    const calc = new Calculator('te', 'discrete').setAlphabet(2).setProperty('k', 1);
    calc.initialise();
    calc.addObservations(a.src, a.dst);
    calc.addObservations(b.src, b.dst);
    calc.finalise();
    expect(calc.nObservations).toBe(399 + 299);
    const local = calc.computeLocal();
    expect(local.length).toBe(700);
    expect(local[0]).toBe(0);
    expect(local[400]).toBe(0);
  });
});

describe('boundary validation (native layer never invoked)', () => {
  it('rejects a ragged 2-D array synchronously', () => {
    const calc = new Calculator('mi', 'ksg').setProperty('K', 4);
    calc.initialise();
    expect(() => calc.addObservations([[0, 1], [2]], [[3], [4]])).toThrow(BoundaryError);
  });

  it('rejects non-finite values', () => {
    const calc = new Calculator('entropy', 'kernel');
    calc.initialise();
    expect(() => calc.addObservations([0, Number.NaN, 1])).toThrow(BoundaryError);
  });

  it('rejects wrong arity for the measure', () => {
    const calc = new Calculator('te', 'discrete');
    calc.initialise();
    expect(() => calc.addObservations([0, 1, 0])).toThrow(BoundaryError);
  });

  it('rejects length mismatches across arguments', () => {
    const calc = new Calculator('mi', 'discrete');
    calc.initialise();
    expect(() => calc.addObservations([0, 1, 0], [1, 0])).toThrow(BoundaryError);
  });
});

describe('native error mirroring', () => {
  it('carries the native diagnostic for unknown properties', () => {
    const calc = new Calculator('te', 'discrete').setAlphabet(2);
    calc.setProperty('frobnicate', 1);
    const { src, dst } = binaryCopy(50);
    calc.setObservations(src, dst);
    try {
      calc.computeAverage();
      throw new Error('expected a native error');
    } catch (err) {
      expect(err).toBeInstanceOf(NativeError);
      expect((err as NativeError).exitCode).toBe(2);
      expect(String(err)).toContain('frobnicate');
    }
  });

  it('maps symbol-out-of-alphabet to a data error', () => {
    const calc = new Calculator('mi', 'discrete').setAlphabet(2);
    calc.setObservations([0, 1, 2, 1], [0, 1, 0, 1]);
    try {
      calc.computeAverage();
      throw new Error('expected a native error');
    } catch (err) {
      expect(err).toBeInstanceOf(NativeError);
      expect((err as NativeError).exitCode).toBe(1);
    }
  });
});

describe('one-shot compute', () => {
  it('returns average, locals and significance in one call', () => {
    const { src, dst } = binaryCopy(1500);
    const result = compute('te', 'discrete', [src, dst], {
      alphabet: 2,
      properties: { k: '1' },
      local: true,
      surrogates: 100,
      seed: 3,
      analyticNull: true,
    });
    expect(result.average).toBeGreaterThan(0.95);
    expect(result.units).toBe('bits');
    expect(result.local?.length).toBe(1500);
    expect(result.significance?.pValue).toBe(0);
    expect(result.analytic?.dof).toBe(2);
  });
});

describe('readTable', () => {
  it('reads the bundled CSV fixtures', () => {
    const table = readTable(join(fixturesDir, 'gaussian_pair.csv'), 'csv');
    expect(table.names).toEqual(['x', 'y']);
    expect(table.data.length).toBe(1000);
  });

  it('round-trips exactly what the native reader sees', () => {
    const table = readTable(join(fixturesDir, 'gaussian_pair.csv'), 'csv');
    // spot-check against a native computation over the same columns
    const calc = new Calculator('mi', 'gaussian');
    calc.setObservations(
      table.data.map((row) => [row[0]]),
      table.data.map((row) => [row[1]]),
    );
    const { record } = runCli([
      'compute', '--measure', 'mi', '--estimator', 'gaussian',
      '--input', join(fixturesDir, 'gaussian_pair.csv'),
      '--dest', 'x', '--source', 'y',
    ]);
    expect(Object.is(calc.computeAverage(), record.average)).toBe(true);
  });
});
