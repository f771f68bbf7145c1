/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_kernelview_free: (a: number, b: number) => void;
export const __wbg_meanview_free: (a: number, b: number) => void;
export const __wbg_scanview_free: (a: number, b: number) => void;
export const describeKernel: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
export const fitMean: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: bigint) => [number, number, number];
export const kernelview_cells: (a: number) => number;
export const kernelview_expected: (a: number) => [number, number];
export const kernelview_heatmap: (a: number) => [number, number];
export const kernelview_operatorEigenvalues: (a: number) => [number, number];
export const meanview_c: (a: number) => number;
export const meanview_converged: (a: number) => number;
export const meanview_edges: (a: number) => number;
export const meanview_fitted: (a: number) => [number, number];
export const meanview_heatmap: (a: number) => [number, number];
export const meanview_objectiveTrace: (a: number) => [number, number];
export const meanview_realized: (a: number) => [number, number];
export const meanview_target: (a: number) => [number, number];
export const scanSample: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: bigint, j: number) => [number, number, number];
export const scanview_c: (a: number) => number;
export const scanview_radius: (a: number) => number;
export const scanview_spectrum: (a: number) => [number, number];
export const meanview_cells: (a: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
