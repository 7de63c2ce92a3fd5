"""Non-crossing partitions, series, free spaces and R-diagonal pairs."""
