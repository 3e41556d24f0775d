function oops( {
  return;
