/** Lifecycle calculator driving the native CLI: construct, set properties,
 * initialise, add observations (one trial per call), compute. */

import { mkdtempSync, rmSync, writeFileSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';

import { BoundaryError, LifecycleError } from './errors.js';
import { runCli } from './invoke.js';
import { readTable } from './tables.js';

export type Matrix = number[][];
export type ArrayLike1or2D = number[] | number[][];

export const MEASURES = [
  'entropy', 'mi', 'cmi', 'multi', 'rate', 'ais', 'pi', 'te', 'cte',
  'collective-te', 'separable',
] as const;
export type Measure = (typeof MEASURES)[number];

export const ESTIMATORS = ['discrete', 'gaussian', 'kernel', 'ksg', 'symbolic'] as const;
export type Estimator = (typeof ESTIMATORS)[number];

/** Number of array arguments each measure's addObservations expects, in the
 * same order as the native calculators. */
const ARITY: Record<Measure, number> = {
  entropy: 1, multi: 1, rate: 1, ais: 1, pi: 1,
  mi: 2, te: 2, 'collective-te': 2, separable: 2,
  cmi: 3, cte: 3,
};

/** Maps positional arguments to CLI column roles per measure. */
export const MEASURE_ROLES: Record<Measure, Array<'dest' | 'source' | 'cond'>> = {
  entropy: ['dest'], multi: ['dest'], rate: ['dest'], ais: ['dest'], pi: ['dest'],
  mi: ['dest', 'source'],
  cmi: ['dest', 'source', 'cond'],
  te: ['source', 'dest'], 'collective-te': ['source', 'dest'],
  separable: ['dest', 'source'],
  cte: ['source', 'dest', 'cond'],
};

export interface SignificanceOptions {
  method?: 'permutation' | 'rotation';
  seed?: number;
}

export interface SignificanceRecord {
  pValue: number;
  mean: number;
  std: number;
  tScore: number;
  nSurrogates: number;
  method: string;
}

export interface AnalyticRecord {
  pValue: number;
  mean: number;
  dof: number;
}

function as2d(values: ArrayLike1or2D, name: string): Matrix {
  if (!Array.isArray(values) || values.length === 0) {
    throw new BoundaryError(`${name} must be a non-empty array`);
  }
  const rows: Matrix = Array.isArray(values[0])
    ? (values as number[][]).map((row) => [...row])
    : (values as number[]).map((v) => [v]);
  const width = rows[0].length;
  if (width === 0) throw new BoundaryError(`${name} must have at least one column`);
  rows.forEach((row, i) => {
    if (!Array.isArray(row) || row.length !== width) {
      throw new BoundaryError(
        `${name} is ragged: row ${i} has ${Array.isArray(row) ? row.length : 'no'} cells, expected ${width}`,
      );
    }
    row.forEach((v, j) => {
      if (typeof v !== 'number' || !Number.isFinite(v)) {
        throw new BoundaryError(`${name}[${i}][${j}] is not a finite number`);
      }
    });
  });
  return rows;
}

export class Calculator {
  readonly measure: Measure;
  readonly estimator: Estimator;
  private properties = new Map<string, string>();
  private alphabet: number | null = null;
  private trials: Matrix[][] | null = null;
  private finalised = false;
  private cache = new Map<string, Record<string, unknown>>();

  constructor(measure: Measure, estimator: Estimator) {
    if (!MEASURES.includes(measure)) {
      throw new BoundaryError(`unknown measure ${JSON.stringify(measure)}`);
    }
    if (!ESTIMATORS.includes(estimator)) {
      throw new BoundaryError(`unknown estimator ${JSON.stringify(estimator)}`);
    }
    this.measure = measure;
    this.estimator = estimator;
  }

  /** String key-value property, forwarded verbatim to the native layer. */
  setProperty(key: string, value: string | number | boolean): this {
    this.properties.set(key, String(value));
    return this;
  }

  setAlphabet(size: number): this {
    this.alphabet = size;
    return this;
  }

  initialise(): this {
    this.trials = [];
    this.finalised = false;
    this.cache.clear();
    return this;
  }

  addObservations(...arrays: ArrayLike1or2D[]): this {
    if (this.trials === null) {
      throw new LifecycleError('call initialise() before addObservations()');
    }
    if (this.finalised) {
      throw new LifecycleError('observations already finalised; initialise() to reuse');
    }
    const arity = ARITY[this.measure];
    if (arrays.length !== arity) {
      throw new BoundaryError(
        `measure ${this.measure} takes ${arity} array argument(s), got ${arrays.length}`,
      );
    }
    const blocks = arrays.map((arr, i) => as2d(arr, `argument ${i}`));
    const heights = new Set(blocks.map((b) => b.length));
    if (heights.size !== 1) {
      throw new BoundaryError(
        `length mismatch across arguments: ${blocks.map((b) => b.length).join(', ')}`,
      );
    }
    this.trials.push(blocks);
    return this;
  }

  finalise(): this {
    if (this.trials === null) {
      throw new LifecycleError('call initialise() before finalise()');
    }
    if (this.trials.length === 0) {
      throw new LifecycleError('no observations were added');
    }
    this.finalised = true;
    return this;
  }

  setObservations(...arrays: ArrayLike1or2D[]): this {
    return this.initialise().addObservations(...arrays).finalise();
  }

  computeAverage(): number {
    return this.run([]).average as number;
  }

  get units(): string {
    return this.run([]).units as string;
  }

  get nObservations(): number {
    return this.run([]).n_observations as number;
  }

  computeLocal(): number[] {
    const record = this.run(['local']);
    return record.__local as number[];
  }

  computeSignificance(nSurrogates: number, options: SignificanceOptions = {}): SignificanceRecord {
    const method = options.method ?? 'permutation';
    const seed = options.seed ?? 0;
    const record = this.run([
      '--surrogates', String(nSurrogates),
      '--surrogate-method', method,
      '--seed', String(seed),
    ]);
    return {
      pValue: record.p_value as number,
      mean: record.surrogate_mean as number,
      std: record.surrogate_std as number,
      tScore: record.t_score as number,
      nSurrogates: record.n_surrogates as number,
      method: record.surrogate_method as string,
    };
  }

  computeAnalyticSignificance(): AnalyticRecord {
    const record = this.run(['--analytic-null']);
    return {
      pValue: record.analytic_p_value as number,
      mean: record.analytic_mean as number,
      dof: record.analytic_dof as number,
    };
  }

  /** The raw native record of the last matching computation. */
  record(extra: string[] = []): Record<string, unknown> {
    return this.run(extra);
  }

  private run(extra: string[]): Record<string, unknown> {
    if (this.trials === null || !this.finalised) {
      throw new LifecycleError(
        'no finalised observations; call initialise()/addObservations()/finalise() first',
      );
    }
    const wantLocal = extra.length === 1 && extra[0] === 'local';
    const key = wantLocal ? 'local' : extra.join(' ');
    const hit = this.cache.get(key);
    if (hit) return hit;

    const roles = MEASURE_ROLES[this.measure];
    const widths = this.trials[0].map((block) => block[0].length);
    const colspecs: string[] = [];
    let offset = 0;
    for (const width of widths) {
      const indices = Array.from({ length: width }, (_, j) => String(offset + j));
      colspecs.push(indices.join(','));
      offset += width;
    }

    const dir = mkdtempSync(join(tmpdir(), 'infodyn-'));
    try {
      const args = ['compute', '--measure', this.measure, '--estimator', this.estimator];
      this.trials.forEach((blocks, t) => {
        const path = join(dir, `trial${t}.csv`);
        const header = Array.from({ length: offset }, (_, j) => `c${j}`).join(',');
        const lines = [header];
        for (let r = 0; r < blocks[0].length; r += 1) {
          lines.push(blocks.map((block) => block[r].map(String).join(',')).join(','));
        }
        writeFileSync(path, `${lines.join('\n')}\n`);
        args.push('--input', path);
      });
      roles.forEach((role, i) => {
        args.push(`--${role}`, colspecs[i]);
      });
      if (this.alphabet !== null) args.push('--alphabet', String(this.alphabet));
      for (const [k, v] of this.properties) args.push('-p', `${k}=${v}`);
      const localPath = join(dir, 'local.csv');
      if (wantLocal) {
        args.push('--local', localPath);
      } else {
        args.push(...extra);
      }
      const { record } = runCli(args);
      if (wantLocal) {
        record.__local = readTable(localPath, 'csv').data.map((row) => row[0]);
      }
      this.cache.set(key, record);
      return record;
    } finally {
      rmSync(dir, { recursive: true, force: true });
    }
  }
}

export interface ComputeResult {
  average: number;
  units: string;
  nObservations: number;
  local?: number[];
  significance?: SignificanceRecord;
  analytic?: AnalyticRecord;
}

export interface ComputeOptions {
  properties?: Record<string, string | number | boolean>;
  alphabet?: number;
  local?: boolean;
  surrogates?: number;
  surrogateMethod?: 'permutation' | 'rotation';
  seed?: number;
  analyticNull?: boolean;
}

/** One-shot computation over a single realisation. */
export function compute(
  measure: Measure,
  estimator: Estimator,
  arrays: ArrayLike1or2D[],
  options: ComputeOptions = {},
): ComputeResult {
  const calc = new Calculator(measure, estimator);
  for (const [key, value] of Object.entries(options.properties ?? {})) {
    calc.setProperty(key, value);
  }
  if (options.alphabet !== undefined) calc.setAlphabet(options.alphabet);
  calc.setObservations(...arrays);
  const result: ComputeResult = {
    average: calc.computeAverage(),
    units: calc.units,
    nObservations: calc.nObservations,
  };
  if (options.local) result.local = calc.computeLocal();
  if (options.surrogates) {
    result.significance = calc.computeSignificance(options.surrogates, {
      method: options.surrogateMethod,
      seed: options.seed,
    });
  }
  if (options.analyticNull) result.analytic = calc.computeAnalyticSignificance();
  return result;
}
