/** Normalized head offset; both components stay inside [-1, 1]. */
export interface HeadPose {
  hx: number;
  hy: number;
}

/** One entry of the exported stack manifest. */
export interface ManifestLayer {
  file: string;
  nearness: number;
}

/** Mirror of the batch pipeline's manifest.json schema. */
export interface ViewerManifest {
  width: number;
  height: number;
  fixation_nearness: number;
  gain_px: number;
  layers: ManifestLayer[];
}

/** How raw input becomes a head pose. */
export interface InputMapping {
  source: 'pointer' | 'orientation';
  /** scale applied to the normalized input before clamping, > 0 */
  sensitivity: number;
  /** exponential smoothing factor in [0, 1); 0 = no smoothing */
  smoothing: number;
}

export interface LoadedLayer {
  image: CanvasImageSource;
  nearness: number;
}

export interface LoadedStack {
  width: number;
  height: number;
  fixationNearness: number;
  gainPx: number;
  layers: LoadedLayer[];
}
