/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const hoffman: (a: number, b: number) => [number, number];
export const line_sum: (a: number, b: number) => [number, number];
export const preset: (a: number, b: number) => [number, number];
export const random_matrix: (a: number, b: number, c: number, d: number) => [number, number];
export const scheme: (a: number, b: number) => [number, number];
export const spectrum: (a: number, b: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
