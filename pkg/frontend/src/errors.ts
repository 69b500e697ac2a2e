/** Errors raised at the scripting boundary. */

/** Invalid input caught before the native layer is ever invoked. */
export class BoundaryError extends Error {
  constructor(message: string) {
    super(`infodyn bindings: ${message}`);
    this.name = 'BoundaryError';
  }
}

/** Lifecycle methods called out of order, mirroring the native contract. */
export class LifecycleError extends Error {
  constructor(message: string) {
    super(`infodyn bindings: ${message}`);
    this.name = 'LifecycleError';
  }
}

/** The native layer rejected the request; carries its diagnostic verbatim. */
export class NativeError extends Error {
  readonly exitCode: number;

  constructor(message: string, exitCode: number) {
    super(`infodyn native: ${message}`);
    this.name = exitCode === 2 ? 'NativeUsageError' : 'NativeError';
    this.exitCode = exitCode;
  }
}
