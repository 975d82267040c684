"""Core shared types, agent interface, configuration, exceptions and algorithm registry."""
