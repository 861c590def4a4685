"""Collections of p-subgroups, their poset topology, and higher limits."""
from .groups import GroupTable, Subgroup
from .spec import GroupSpec, build_group

__all__ = ["GroupTable", "Subgroup", "GroupSpec", "build_group"]
__version__ = "0.1.0"
