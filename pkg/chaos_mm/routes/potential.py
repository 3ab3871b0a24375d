# Standard Imports
from collections.abc import Iterator

# My Imports
from ..dynamics.hamiltonian import potential_grid
from ..models import PotentialGrid, PotentialGridExperiment, RunConfig
from ..store import write_csv
from ..utils import slug
from .router import CommandResult, CommandRouter, RunContext


# ------------------Helpers-------------------#
def long_rows(grid: PotentialGrid) -> Iterator[tuple[float, float, float]]:
    """x-major, then v."""
    for i, x in enumerate(grid.x_values):
        for j, v in enumerate(grid.v_values):
            yield float(x), float(v), float(grid.values[i, j])


# ------------------Setup-------------------#
router: CommandRouter = CommandRouter()


# ------------------Potential-Grid-------------------#
@router.command("potential-grid")
def cmd_potential_grid(config: RunConfig, context: RunContext) -> CommandResult:
    experiment = config.experiment
    assert isinstance(experiment, PotentialGridExperiment)
    epsilons: list[float] = experiment.epsilons or [config.model.epsilon]
    files: list[str] = []
    minima: dict[str, list[float]] = {}
    for epsilon in epsilons:
        grid: PotentialGrid = potential_grid(
            config.model.with_epsilon(epsilon),
            experiment.x_range,
            experiment.v_range,
            experiment.n,
        )
        name: str = "potential.csv" if len(epsilons) == 1 else f"potential_eps{slug(epsilon)}.csv"
        files.append(str(write_csv(context.out_dir / name, ["x", "v", "V"], long_rows(grid))))
        i, j = divmod(int(grid.values.argmin()), experiment.n)
        minima[name] = [float(grid.x_values[i]), float(grid.v_values[j])]
    return CommandResult(files=files, details={"grid_minimum_at": minima})
