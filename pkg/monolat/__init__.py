# monolat - 单变元格值逻辑：代数语义、相继式演算与插值
__version__ = "0.1.0"
