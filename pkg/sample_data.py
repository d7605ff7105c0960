# Sample group corpus for tests, the CLI and the service
import logging
from pathlib import Path
from pydantic import BaseModel
from config import settings
from perm import GroupSpec, GroupTable, close, format_group_file, load_group_file, regular_representation

logger = logging.getLogger(__name__)


class SampleGroup(BaseModel):
    name: str
    description: str
    order: int
    regular: bool = False  # the regular presentation is part of the corpus


# Shipped group files (natural presentations)
SAMPLE_GROUPS = [
    SampleGroup(name='c12', description='cyclic group of order 12', order=12, regular=True),
    SampleGroup(name='d8', description='dihedral group of order 8', order=8, regular=True),
    SampleGroup(name='d12', description='dihedral group of order 12 on the hexagon', order=12, regular=True),
    SampleGroup(name='d16', description='dihedral group of order 16', order=16, regular=True),
    SampleGroup(name='a4', description='alternating group A4', order=12, regular=True),
    SampleGroup(name='s4', description='symmetric group S4', order=24, regular=True),
    SampleGroup(name='a5', description='alternating group A5', order=60, regular=True),
    SampleGroup(name='f20', description='Frobenius group of order 20 on 5 points', order=20),
    SampleGroup(name='q8', description='quaternion group, regular on 8 points', order=8),
    SampleGroup(name='sl23', description='SL(2,3) on the 8 nonzero vectors of F3^2', order=24),
    SampleGroup(name='s3wrc3', description='S3 wr C3 on 9 points', order=648),
    SampleGroup(name='two_orbit9', description='degree 9, a cyclic subgroup with orbits of lengths 6 and 3', order=162),
]

CATALOGUE = {sample.name: sample for sample in SAMPLE_GROUPS}


def sample_path(name: str) -> Path:
    if name not in CATALOGUE:
        raise KeyError(f'unknown sample group {name!r}')
    return Path(settings.groups_dir) / f'{name}.grp'


def load_sample(name: str, regular: bool = False) -> GroupTable:
    """Close a shipped group; regular=True gives its right-regular presentation."""
    G = close(load_group_file(sample_path(name)))
    if regular:
        G = close(regular_representation(G, name=f'{name}_regular'))
    return G


def sample_corpus() -> dict[str, GroupTable]:
    """Every natural presentation plus the regular ones flagged in the catalogue."""
    corpus = {}
    for sample in SAMPLE_GROUPS:
        corpus[sample.name] = load_sample(sample.name)
        if sample.regular:
            corpus[f'{sample.name}_regular'] = load_sample(sample.name, regular=True)
    return corpus


def seed_sample_data(directory: str | Path | None = None) -> dict:
    """
    Write the regular presentations as group files next to the natural ones.
    """
    directory = Path(directory or settings.groups_dir)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for sample in SAMPLE_GROUPS:
        if not sample.regular:
            continue
        spec: GroupSpec = regular_representation(load_sample(sample.name), name=f'{sample.name}_regular')
        target = directory / f'{spec.name}.grp'
        target.write_text(format_group_file(spec, comment=f'{sample.description}, right-regular action'))
        written.append(target.name)
        logger.info('[SEED] wrote %s', target)
    return {
        'status': 'success',
        'files_written': written,
    }


if __name__ == '__main__':
    from config import configure_logging
    configure_logging()
    seed_sample_data()
