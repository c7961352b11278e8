import { CompareError, CompareView } from './compare.js';
import { ManifestError, loadStack } from './manifest.js';
import { PoseController } from './pose.js';
import { StackRenderer, startRenderLoop } from './renderer.js';
import type { InputMapping } from './types.js';

function showError(message: string): void {
  const banner = document.getElementById('error-banner');
  if (banner) {
    banner.textContent = message;
    banner.hidden = false;
  }
  const stage = document.getElementById('stage');
  if (stage) stage.innerHTML = '';
}

function mappingFromParams(params: URLSearchParams): InputMapping {
  const sensitivity = Number(params.get('sensitivity') ?? '1');
  return {
    source: params.get('input') === 'orientation' ? 'orientation' : 'pointer',
    sensitivity: Number.isFinite(sensitivity) && sensitivity > 0 ? sensitivity : 1,
    smoothing: 0.85,
  };
}

async function boot(): Promise<void> {
  const params = new URLSearchParams(window.location.search);
  const stackUrl = params.get('stack');
  const compareUrl = params.get('compare');
  const stage = document.getElementById('stage');
  if (!stage) return;
  if (!stackUrl) {
    showError('Pass ?stack=<url-to-manifest.json> (and optionally &compare=<url>).');
    return;
  }

  const controller = new PoseController(mappingFromParams(params));
  try {
    const stack = await loadStack(stackUrl);
    let renderers: StackRenderer[];
    if (compareUrl) {
      const other = await loadStack(compareUrl);
      const view = new CompareView(stage as HTMLElement, stack, other);
      renderers = view.renderers;
    } else {
      const canvas = document.createElement('canvas');
      stage.appendChild(canvas);
      renderers = [new StackRenderer(canvas, stack)];
    }
    controller.attach(window);
    startRenderLoop(renderers, () => controller.tick(), window);
  } catch (err) {
    if (err instanceof ManifestError || err instanceof CompareError) {
      showError(err.message);
    } else {
      showError(`unexpected viewer error: ${String(err)}`);
    }
  }
}

void boot();
