# keeps this directory importable for the shared oracle helpers
