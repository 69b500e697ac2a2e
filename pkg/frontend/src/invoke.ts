/** Synchronous invocation of the native infodyn CLI. */

import { spawnSync } from 'node:child_process';

import { NativeError } from './errors.js';

export interface CliResult {
  record: Record<string, unknown>;
  stdout: string;
}

let cachedCommand: string[] | null = null;

/** Resolve the CLI launcher: $INFODYN_BIN, the infodyn entry point, or
 * `python3 -m infodyn`. */
export function cliCommand(): string[] {
  if (cachedCommand) return cachedCommand;
  const fromEnv = process.env.INFODYN_BIN;
  const candidates: string[][] = [];
  if (fromEnv) candidates.push(fromEnv.split(' '));
  candidates.push(['infodyn'], ['python3', '-m', 'infodyn']);
  for (const candidate of candidates) {
    const probe = spawnSync(candidate[0], [...candidate.slice(1), '--help'], {
      encoding: 'utf8',
    });
    if (probe.status === 0) {
      cachedCommand = candidate;
      return candidate;
    }
  }
  throw new NativeError(
    'cannot find the infodyn CLI (set INFODYN_BIN or install the package)', 1,
  );
}

export function runCli(args: string[]): CliResult {
  const command = cliCommand();
  const proc = spawnSync(command[0], [...command.slice(1), ...args], {
    encoding: 'utf8',
    maxBuffer: 64 * 1024 * 1024,
  });
  if (proc.error) {
    throw new NativeError(String(proc.error), 1);
  }
  if (proc.status !== 0) {
    const detail = (proc.stderr || proc.stdout || '').trim() || `exit code ${proc.status}`;
    throw new NativeError(detail, proc.status ?? 1);
  }
  const line = proc.stdout.trim().split('\n').pop() ?? '';
  return { record: JSON.parse(line) as Record<string, unknown>, stdout: proc.stdout };
}
