import type { LoadedStack, ViewerManifest } from './types.js';

export class ManifestError extends Error {}

/**
 * Validate a parsed manifest.json against the exported-stack schema.
 * Throws ManifestError with a readable message; never returns a partial
 * manifest.
 */
export function validateManifest(data: unknown): ViewerManifest {
  if (typeof data !== 'object' || data === null) {
    throw new ManifestError('manifest must be a JSON object');
  }
  const m = data as Record<string, unknown>;
  for (const key of ['width', 'height', 'fixation_nearness', 'gain_px'] as const) {
    if (typeof m[key] !== 'number' || !Number.isFinite(m[key] as number)) {
      throw new ManifestError(`manifest field "${key}" must be a finite number`);
    }
  }
  if (!Array.isArray(m.layers) || m.layers.length === 0) {
    throw new ManifestError('manifest needs a non-empty "layers" array');
  }
  const layers = m.layers.map((entry, i) => {
    if (typeof entry !== 'object' || entry === null) {
      throw new ManifestError(`layer ${i} must be an object`);
    }
    const e = entry as Record<string, unknown>;
    if (typeof e.file !== 'string' || e.file.length === 0) {
      throw new ManifestError(`layer ${i} is missing its "file" name`);
    }
    if (typeof e.nearness !== 'number' || !Number.isFinite(e.nearness)) {
      throw new ManifestError(`layer ${i} ("${e.file}") needs a numeric nearness`);
    }
    return { file: e.file, nearness: e.nearness };
  });
  for (let i = 1; i < layers.length; i++) {
    if (layers[i].nearness <= layers[i - 1].nearness) {
      throw new ManifestError(
        `layers must be sorted ascending by nearness ("${layers[i].file}" breaks the order)`,
      );
    }
  }
  return {
    width: m.width as number,
    height: m.height as number,
    fixation_nearness: m.fixation_nearness as number,
    gain_px: m.gain_px as number,
    layers,
  };
}

export type ImageLoader = (url: string) => Promise<CanvasImageSource>;

async function loadImageElement(url: string): Promise<CanvasImageSource> {
  const img = new Image();
  img.src = url;
  try {
    await img.decode();
  } catch {
    throw new ManifestError(`failed to load layer image "${url}"`);
  }
  return img;
}

/**
 * Fetch a manifest URL and decode every layer image. All-or-nothing:
 * any schema violation or missing file rejects the whole stack.
 */
export async function loadStack(
  manifestUrl: string,
  fetchFn: typeof fetch = fetch,
  imageLoader: ImageLoader = loadImageElement,
): Promise<LoadedStack> {
  let response: Response;
  try {
    response = await fetchFn(manifestUrl);
  } catch {
    throw new ManifestError(`cannot reach manifest at ${manifestUrl}`);
  }
  if (!response.ok) {
    throw new ManifestError(`manifest fetch failed (${response.status}) for ${manifestUrl}`);
  }
  let parsed: unknown;
  try {
    parsed = await response.json();
  } catch {
    throw new ManifestError(`manifest at ${manifestUrl} is not valid JSON`);
  }
  const manifest = validateManifest(parsed);
  const base = manifestUrl.slice(0, manifestUrl.lastIndexOf('/') + 1);
  const images = await Promise.all(
    manifest.layers.map(async (layer) => {
      try {
        return await imageLoader(base + layer.file);
      } catch (err) {
        if (err instanceof ManifestError) throw err;
        throw new ManifestError(`failed to load layer image "${layer.file}"`);
      }
    }),
  );
  return {
    width: manifest.width,
    height: manifest.height,
    fixationNearness: manifest.fixation_nearness,
    gainPx: manifest.gain_px,
    layers: manifest.layers.map((layer, i) => ({
      image: images[i],
      nearness: layer.nearness,
    })),
  };
}
