/** Reading the toolkit's table formats into plain arrays. */

import { readFileSync } from 'node:fs';

import { BoundaryError } from './errors.js';

export interface DataTable {
  names: string[];
  /** Row-major (time is the first index). */
  data: number[][];
}

function parseCell(token: string, where: string): number {
  const value = Number(token);
  if (token.trim() === '' || Number.isNaN(value)) {
    throw new BoundaryError(`non-numeric cell ${JSON.stringify(token)} at ${where}`);
  }
  if (!Number.isFinite(value)) {
    throw new BoundaryError(`non-finite cell ${JSON.stringify(token)} at ${where}`);
  }
  return value;
}

function readCsv(path: string): DataTable {
  const lines = readFileSync(path, 'utf8')
    .split(/\r?\n/)
    .filter((line) => line.trim() !== '');
  if (lines.length === 0) throw new BoundaryError(`${path}: empty file`);
  const first = lines[0].split(',');
  const headerless = first.every((cell) => cell.trim() !== '' && !Number.isNaN(Number(cell)));
  const names = headerless
    ? first.map((_, j) => `col${j}`)
    : first.map((cell) => cell.trim());
  const body = headerless ? lines : lines.slice(1);
  const startLine = headerless ? 1 : 2;
  if (body.length === 0) throw new BoundaryError(`${path}: no data rows`);
  const data = body.map((line, i) => {
    const cells = line.split(',');
    if (cells.length !== names.length) {
      throw new BoundaryError(
        `${path}: ragged row at line ${startLine + i}: expected ${names.length} cells, got ${cells.length}`,
      );
    }
    return cells.map((cell, j) => parseCell(cell, `line ${startLine + i}, column ${j}`));
  });
  return { names, data };
}

function readOctaveText(path: string): DataTable {
  const lines = readFileSync(path, 'utf8').split(/\r?\n/);
  const names: string[] = [];
  const columns: number[][] = [];
  let i = 0;
  while (i < lines.length) {
    const line = lines[i].trim();
    if (line === '') {
      i += 1;
      continue;
    }
    if (!line.startsWith('# name:')) {
      throw new BoundaryError(`${path}: expected '# name:' header at line ${i + 1}`);
    }
    const name = line.split(':', 2)[1].trim();
    const header: Record<string, string> = {};
    i += 1;
    while (i < lines.length && lines[i].trim().startsWith('#')) {
      const [key, ...rest] = lines[i].replace(/^[#\s]+/, '').split(':');
      header[key.trim()] = rest.join(':').trim();
      i += 1;
    }
    if (header['type'] !== 'matrix') {
      throw new BoundaryError(`${path}: unknown type tag ${JSON.stringify(header['type'])}`);
    }
    const rows = Number(header['rows']);
    const cols = Number(header['columns']);
    if (!Number.isInteger(rows) || !Number.isInteger(cols)) {
      throw new BoundaryError(`${path}: matrix ${name} lacks valid rows/columns headers`);
    }
    const block: number[][] = [];
    for (let r = 0; r < rows; r += 1, i += 1) {
      if (i >= lines.length) throw new BoundaryError(`${path}: matrix ${name} truncated`);
      const cells = lines[i].trim().split(/\s+/);
      if (cells.length !== cols) {
        throw new BoundaryError(
          `${path}: ragged row at line ${i + 1}: expected ${cols} cells, got ${cells.length}`,
        );
      }
      block.push(cells.map((cell, c) => parseCell(cell, `line ${i + 1}, column ${c}`)));
    }
    for (let c = 0; c < cols; c += 1) {
      names.push(cols === 1 ? name : `${name}_${c}`);
      columns.push(block.map((row) => row[c]));
    }
  }
  if (columns.length === 0) throw new BoundaryError(`${path}: no matrices found`);
  const height = columns[0].length;
  if (columns.some((col) => col.length !== height)) {
    throw new BoundaryError(`${path}: matrices have mismatching row counts`);
  }
  const data = Array.from({ length: height }, (_, r) => columns.map((col) => col[r]));
  return { names, data };
}

export function readTable(path: string, format: 'csv' | 'octave' = 'csv'): DataTable {
  if (format === 'csv') return readCsv(path);
  if (format === 'octave') return readOctaveText(path);
  throw new BoundaryError(`unknown table format ${JSON.stringify(format)}`);
}
