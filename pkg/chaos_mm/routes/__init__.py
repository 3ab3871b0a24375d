from .router import CommandRouter, CommandResult, RunContext  # noqa: F401
from .simulate import router as simulate_router
from .poincare import router as poincare_router
from .lyapunov import router as lyapunov_router
from .kam import router as kam_router
from .sample_hist import router as sample_hist_router
from .potential import router as potential_router


command_router: CommandRouter = CommandRouter()
command_router.include_router(simulate_router)
command_router.include_router(poincare_router)
command_router.include_router(lyapunov_router)
command_router.include_router(kam_router)
command_router.include_router(sample_hist_router)
command_router.include_router(potential_router)
