export {
  Calculator,
  compute,
  MEASURES,
  ESTIMATORS,
  MEASURE_ROLES,
} from './calculator.js';
export type {
  ArrayLike1or2D,
  ComputeOptions,
  ComputeResult,
  Estimator,
  Matrix,
  Measure,
  SignificanceOptions,
  SignificanceRecord,
  AnalyticRecord,
} from './calculator.js';
export { readTable } from './tables.js';
export type { DataTable } from './tables.js';
export { BoundaryError, LifecycleError, NativeError } from './errors.js';
export { cliCommand, runCli } from './invoke.js';
