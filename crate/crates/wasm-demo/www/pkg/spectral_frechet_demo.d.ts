/* tslint:disable */
/* eslint-disable */

export class KernelView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly cells: number;
    readonly expected: Float64Array;
    readonly heatmap: Float64Array;
    readonly operatorEigenvalues: Float64Array;
}

export class MeanView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly c: number;
    readonly cells: number;
    readonly converged: boolean;
    readonly edges: number;
    readonly fitted: Float64Array;
    readonly heatmap: Float64Array;
    readonly objectiveTrace: Float64Array;
    readonly realized: Float64Array;
    readonly target: Float64Array;
}

export class ScanView {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly c: number;
    readonly radius: number;
    readonly spectrum: Float64Array;
}

/**
 * Heatmap and extreme eigenvalues of a block kernel.
 */
export function describeKernel(rho: number, sizes: Float64Array, within: Float64Array, cross: number, n: number): KernelView;

/**
 * Samples `count` graphs and fits their approximate Fréchet mean.
 */
export function fitMean(rho: number, sizes: Float64Array, within: Float64Array, cross: number, n: number, count: number, seed: bigint): MeanView;

/**
 * Samples `count` graphs and counts the eigenvalues of their mean spectrum outside the bulk.
 */
export function scanSample(rho: number, sizes: Float64Array, within: Float64Array, cross: number, n: number, count: number, seed: bigint, k_bulk: number): ScanView;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_kernelview_free: (a: number, b: number) => void;
    readonly __wbg_meanview_free: (a: number, b: number) => void;
    readonly __wbg_scanview_free: (a: number, b: number) => void;
    readonly describeKernel: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
    readonly fitMean: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: bigint) => [number, number, number];
    readonly kernelview_cells: (a: number) => number;
    readonly kernelview_expected: (a: number) => [number, number];
    readonly kernelview_heatmap: (a: number) => [number, number];
    readonly kernelview_operatorEigenvalues: (a: number) => [number, number];
    readonly meanview_c: (a: number) => number;
    readonly meanview_converged: (a: number) => number;
    readonly meanview_edges: (a: number) => number;
    readonly meanview_fitted: (a: number) => [number, number];
    readonly meanview_heatmap: (a: number) => [number, number];
    readonly meanview_objectiveTrace: (a: number) => [number, number];
    readonly meanview_realized: (a: number) => [number, number];
    readonly meanview_target: (a: number) => [number, number];
    readonly scanSample: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number, i: bigint, j: number) => [number, number, number];
    readonly scanview_c: (a: number) => number;
    readonly scanview_radius: (a: number) => number;
    readonly scanview_spectrum: (a: number) => [number, number];
    readonly meanview_cells: (a: number) => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
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
