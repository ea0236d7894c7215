"""Published defect bounds for rank one Fano threefolds of index 1 containing a plane"""
import functools
import importlib.resources
import json

STATUSES = ('proved', 'conjectural', 'no_plane')

@functools.cache
def _reference_bounds():
    path = importlib.resources.files('fanodefect').joinpath('vendor').joinpath('reference_bounds.json')
    with path.open('r', encoding='utf-8') as f:
        raw = json.load(f)
    bounds = {}
    for genus, entry in raw.items():
        if entry['status'] not in STATUSES:
            raise ValueError(f"Unknown status {entry['status']!r} for genus {genus}")
        bounds[int(genus)] = entry
    return bounds

def get_reference_bounds():
    """Known defect bounds by genus; the caller gets its own copy"""
    return {genus: dict(entry) for genus, entry in _reference_bounds().items()}

