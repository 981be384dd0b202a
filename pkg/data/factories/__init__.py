# Test data factories
from data.factories.partition_factory import PartitionFactory
from data.factories.state_factory import StateFactory

__all__ = ["PartitionFactory", "StateFactory"]
