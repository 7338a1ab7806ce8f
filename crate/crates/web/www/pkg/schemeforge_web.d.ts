/* tslint:disable */
/* eslint-disable */

/**
 * Classification, Hoffman polynomial and, for normal input, predistance polynomials.
 */
export function hoffman(text: string): string;

/**
 * Common line sum λ as a string; empty when the row and column sums differ.
 */
export function line_sum(text: string): string;

/**
 * Matrix-file text for a named example: `fig1`, `fig2`, `prism`,
 * `cycle:<n>`, `complete:<n>`, `average:<n>`.
 */
export function preset(name: string): string;

/**
 * Matrix-file text of a seeded random λ-doubly stochastic matrix.
 */
export function random_matrix(n: number, k: number, seed: number, normal: boolean): string;

/**
 * Scheme certificate.
 */
export function scheme(text: string): string;

/**
 * Eigenvalues of the minimal polynomial, Perron check and idempotent residuals.
 */
export function spectrum(text: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly hoffman: (a: number, b: number) => [number, number];
    readonly line_sum: (a: number, b: number) => [number, number];
    readonly preset: (a: number, b: number) => [number, number];
    readonly random_matrix: (a: number, b: number, c: number, d: number) => [number, number];
    readonly scheme: (a: number, b: number) => [number, number];
    readonly spectrum: (a: number, b: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
