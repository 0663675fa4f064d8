"""The ghost map."""
